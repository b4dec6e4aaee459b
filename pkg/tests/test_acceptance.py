"""Exit criteria, one test each, at the stated tolerances.

Full resolution throughout: 512x512, max_iter 256, default viewport,
8-connectivity, no speckle filter.
"""
import random
import time
from collections import Counter

import mpmath
import numpy as np
import pytest

from oracles import brute_member_count, flood_fill_sizes
from seedlab.cli import main
from seedlab.connectivity import disconnectivity_rate, label_components
from seedlab.dynamics import classify_orbit, quad_step
from seedlab.io import data_rows
from seedlab.raster import DEFAULT_VIEWPORT, Viewport, render
from seedlab.sweep import detect_split, frame_record, journey_presets, run_sweep, trend_statistic

VP = DEFAULT_VIEWPORT
MAX_ITER = 256


def random_seed(rng, radius=1.6):
    r = radius * rng.random() ** 0.5
    return complex(r * np.cos(t := 2 * np.pi * rng.random()), r * np.sin(t))


@pytest.fixture(scope="module")
def imaginary_report():
    j = journey_presets()["imaginary"]
    return run_sweep(j.path, j.viewport, j.max_iter, 8)


@pytest.fixture(scope="module")
def classic_field():
    return render(0j, VP, MAX_ITER)


def test_01_classic_baseline(criterion, classic_field):
    rec = frame_record(classic_field, 8)
    oracle = brute_member_count(0j, VP.center, VP.width, VP.height, VP.cols, VP.rows, MAX_ITER)
    ok = rec.component_count == 1 and rec.disconnectivity == 0 and rec.member_pixels == oracle
    criterion(
        1,
        "classic-set baseline",
        ok,
        f"components={rec.component_count} disconnectivity={rec.disconnectivity:.6f} "
        f"members={rec.member_pixels} oracle={oracle}",
    )
    assert rec.member_pixels == oracle
    assert rec.component_count == 1
    assert rec.disconnectivity == 0


def test_02_seed_sign_invariance(criterion, tmp_path):
    rng = random.Random(2)
    mismatched = 0
    for _ in range(10):
        z0 = random_seed(rng)
        a, b = render(z0, VP, MAX_ITER), render(-z0, VP, MAX_ITER)
        mismatched += not (np.array_equal(a.iterations, b.iterations) and np.array_equal(a.mask, b.mask))

    main(["journey", "real", "--out", str(tmp_path / "pos")])
    main(["sweep", "--path=0,0:-1.6,0", "--steps", "33", "--out", str(tmp_path / "neg")])
    pos = [line.split(",") for line in data_rows(tmp_path / "pos" / "sweep.csv")]
    neg = [line.split(",") for line in data_rows(tmp_path / "neg" / "sweep.csv")]
    # seed_re necessarily differs in sign; every other column must match byte for byte
    csv_ok = len(pos) == len(neg) == 34 and pos[0] == neg[0] and all(
        p[:1] + p[2:] == n[:1] + n[2:] and float(p[1]) == -float(n[1]) for p, n in zip(pos[1:], neg[1:])
    )
    criterion(2, "seed-sign invariance", mismatched == 0 and csv_ok, f"field mismatches={mismatched} csv_ok={csv_ok}")
    assert mismatched == 0
    assert csv_ok


def test_03_mirror_for_real_seeds(criterion):
    rng = random.Random(3)
    asym = 0
    for _ in range(5):
        seed = complex(rng.uniform(-1.6, 1.6), 0.0)
        mask = render(seed, VP, MAX_ITER).mask
        asym += not np.array_equal(mask, mask[::-1])
    criterion(3, "conjugation mirror", asym == 0, f"asymmetric masks={asym}/5")
    assert asym == 0


def test_04_escape_soundness(criterion):
    rng = random.Random(4)
    checked = violations = 0
    while checked < 1000:
        z0 = random_seed(rng, 2.0)
        q = complex(rng.uniform(-2.5, 1.5), rng.uniform(-2.0, 2.0))
        res = classify_orbit(z0, q, MAX_ITER)
        if not res.escaped:
            continue
        z = z0
        for _ in range(res.iterations):
            z = quad_step(z, q)
        zz, qq = mpmath.mpc(z.real, z.imag), mpmath.mpc(q.real, q.imag)
        prev = abs(zz)
        for _ in range(50):
            zz = zz * zz + qq
            cur = abs(zz)
            if not cur > prev:
                violations += 1
                break
            prev = cur
        checked += 1
    criterion(4, "escape soundness", violations == 0, f"{checked} escaped orbits, violations={violations}")
    assert violations == 0


def test_05_labeling_oracle(criterion):
    rng = np.random.default_rng(5)
    mismatches = 0
    for _ in range(500):
        rows, cols = rng.integers(1, 17, size=2)
        mask = rng.random((rows, cols)) < rng.uniform(0.1, 0.9)
        for kind in (4, 8):
            sizes = label_components(mask, kind).component_sizes
            mismatches += Counter(sizes) != Counter(flood_fill_sizes(mask.tolist(), kind))
    criterion(5, "labeling oracle equivalence", mismatches == 0, f"mismatches={mismatches}/1000")
    assert mismatches == 0


def test_06_peripheral_dust(criterion):
    rec = frame_record(render(complex(0, -0.1), VP, MAX_ITER), 8)
    ok = rec.component_count > 1 and rec.largest_fraction > 0.99
    criterion(6, "peripheral dust at -0.1i", ok, f"components={rec.component_count} largest={rec.largest_fraction:.5f}")
    assert ok


def test_07_split_event(criterion, imaginary_report):
    step = detect_split(imaginary_report, 2)
    im = None if step is None else imaginary_report.records[step].seed.imag
    ok = im is not None and -1.1 <= im <= -0.9
    criterion(7, "split event", ok, f"step={step} seed_im={im}")
    assert ok


def test_08_monotone_degradation(criterion, imaginary_report):
    seeds = imaginary_report.path.seeds()
    stop = seeds.index(complex(0, -1.05))
    t = trend_statistic(imaginary_report, stop=stop)
    ok = t.spearman_rho > 0.9 and t.last_value > t.first_value
    criterion(
        8,
        "monotone degradation 0 -> -1.05i",
        ok,
        f"rho={t.spearman_rho:.4f} first={t.first_value:.6f} last={t.last_value:.6f}",
    )
    assert t.last_value > t.first_value
    assert t.spearman_rho > 0.9


def test_09_late_collapse(criterion, imaginary_report, classic_field):
    base = classic_field.member_pixels
    recs = {
        "-1.6i": imaginary_report.records[-1],
        "1.6": disconnectivity_rate(label_components(render(1.6 + 0j, VP, MAX_ITER).mask, 8)),
    }
    ok = all(r.empty or r.member_pixels < 0.05 * base for r in recs.values())
    detail = " ".join(f"{k}: members={r.member_pixels} empty={r.empty}" for k, r in recs.items())
    criterion(9, "late-journey collapse", ok, f"{detail} (5% of {base} = {0.05 * base:.0f})")
    assert ok


def test_10_thread_determinism(criterion, tmp_path):
    outs = []
    for n in (1, 2, 8):
        out = tmp_path / f"t{n}"
        assert main(["render", "--seed", "0,0", "--threads", str(n), "--out", str(out)]) == 0
        outs.append(((out / "render.pgm").read_bytes(), (out / "record.csv").read_bytes()))
    ok = outs[0] == outs[1] == outs[2]
    criterion(10, "determinism across 1/2/8 threads", ok, "image and CSV bytes identical" if ok else "bytes differ")
    assert ok


def test_11_performance(criterion):
    render(0j, Viewport(VP.center, VP.width, VP.height, 16, 16), 8)  # warm the JIT cache
    t0 = time.perf_counter()
    render(0j, Viewport(VP.center, VP.width, VP.height, 1024, 1024), 512)
    frame = time.perf_counter() - t0
    j = journey_presets()["imaginary"]
    t0 = time.perf_counter()
    run_sweep(j.path, j.viewport, j.max_iter, 8)
    journey = time.perf_counter() - t0
    ok = frame < 5.0 and journey < 60.0
    criterion(11, "performance envelope", ok, f"1024^2 frame {frame:.2f}s (<5), 33-frame journey {journey:.2f}s (<60)")
    assert frame < 5.0
    assert journey < 60.0
