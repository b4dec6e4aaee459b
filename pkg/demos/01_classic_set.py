"""The classic Mandelbrot set: seed at the critical point 0.

Renders the default window, labels the member pixels and lists the largest
pieces. Even the classic set is not one 8-connected piece at 512x512: a
minibrot near -1.76 and a handful of single-pixel islands sit off the main
body because the filaments joining them are thinner than a pixel.
"""
from pathlib import Path

from seedlab import DEFAULT_VIEWPORT, component_stats, disconnectivity_rate, label_components, render
from seedlab.io import write_image

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

field = render(0j, DEFAULT_VIEWPORT, max_iter=256)
labels = label_components(field.mask, connectivity_kind=8)
rec = disconnectivity_rate(labels, field.seed)
print(f"member pixels     {rec.member_pixels}")
print(f"components        {rec.component_count}")
print(f"largest fraction  {rec.largest_fraction:.5f}")
print(f"disconnectivity   {rec.disconnectivity:.5f}")

for s in component_stats(labels, DEFAULT_VIEWPORT)[:5]:
    print(f"  #{s.id:<3d} {s.size_pixels:6d} px  centroid {s.centroid.real:+.4f}{s.centroid.imag:+.4f}i")

print("wrote", write_image(field, out / "classic.pgm"))

# Dropping islands under 20 pixels leaves a single component.
print("components, min_size=20:", label_components(field.mask, 8, min_size=20).component_count)
