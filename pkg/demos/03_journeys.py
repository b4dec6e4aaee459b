"""Both journeys end to end, with frames and a CSV per journey.

Frames go to output/<name>/frame_NNNN.pgm; join them into an animation with
any external tool (e.g. ``ffmpeg -i frame_%04d.pgm``).
"""
from pathlib import Path

from seedlab import detect_split, journey_presets, run_sweep, trend_statistic
from seedlab.io import write_image, write_records_csv

root = Path(__file__).with_name("output")

for name, journey in journey_presets().items():
    out = root / name
    out.mkdir(parents=True, exist_ok=True)
    report = run_sweep(
        journey.path,
        journey.viewport,
        journey.max_iter,
        frame_sink=lambda k, f, out=out: write_image(f, out / f"frame_{k:04d}.pgm"),
    )
    write_records_csv(out / "sweep.csv", report.records, comment=f"journey {name}")

    print(f"\n{name} journey")
    print(" step      seed           members  comps  disconnectivity")
    for k, r in enumerate(report.records):
        flag = "  (empty)" if r.empty else ""
        print(f" {k:4d}  {r.seed.real:+.2f}{r.seed.imag:+.2f}i  {r.member_pixels:8d}  {r.component_count:5d}  {r.disconnectivity:.5f}{flag}")

    split = detect_split(report)
    print("split at step", split, "" if split is None else f"(seed {report.records[split].seed})")
    print("trend over all non-empty steps:", trend_statistic(report))

# Trend restricted to the stretch the split closes: 0 -> -1.05i
imag = run_sweep(*journey_presets()["imaginary"])
stop = imag.path.seeds().index(complex(0, -1.05))
print("\nimaginary 0 -> -1.05i:", trend_statistic(imag, stop=stop))
