"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line."""
import subprocess
import sys
import time

import pytest

from boxpleat import foldsim
from boxpleat.construct import MODES, RECT_SEAM, compile_polycube, fold_rect_seam, paper_size
from boxpleat.io_cli import export_fold, parse_fold
from boxpleat.polycube import Face, Polycube, format_polycube, target_squares

from conftest import CORPUS_SEED, make_corpus


@pytest.fixture(scope="module")
def compiled():
    """Every corpus polycube compiled in every mode, with wall-clock seconds per compile."""
    out = {}
    for i, p in enumerate(make_corpus()):
        for mode in MODES:
            t0 = time.perf_counter()
            res = compile_polycube(p, mode)
            out[i, mode] = (p, res, time.perf_counter() - t0)
    return out


@pytest.fixture
def say(capsys):
    def emit(number, name, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number} ({name}): {detail}")
        assert ok, detail

    return emit


def test_1_base_case(say):
    t0 = time.perf_counter()
    g = Face((0, 0, 0), "-z")
    res = fold_rect_seam(Polycube.of([(0, 0, 0)]), g)
    rep = res.report
    cover = foldsim.layer_accounting(foldsim.evaluate(res.pattern))
    seamless = sum(1 for s in rep.seam_census.values() if s == "seamless")
    dt = time.perf_counter() - t0
    ok = ((res.pattern.width, res.pattern.height) == (5, 3) and len(cover) == 6
          and set(cover) == target_squares(Polycube.of([(0, 0, 0)]))
          and seamless == 5 and rep.seamed_faces == [g] and dt < 1)
    say(1, "base case", ok, f"5x3 sheet covers {len(cover)} cube faces, {seamless} seamless, "
                            f"seamed={rep.seamed_faces}, {dt:.3f}s")


def test_2_size_bounds(compiled, say):
    wrong = []
    slowest = 0.0
    for (i, mode), (p, res, dt) in compiled.items():
        slowest = max(slowest, dt)
        if (res.pattern.width, res.pattern.height) != paper_size(p.n, mode):
            wrong.append((i, mode))
    sizes = sorted({p.n for p, _, _ in compiled.values()})
    ok = not wrong and slowest < 1 and sizes == [1, 2, 3, 4, 5, 6]
    say(2, "size bounds", ok, f"{len(compiled)} compilations for n in {sizes}, {len(wrong)} wrong sizes, "
                              f"slowest {slowest:.3f}s (limit 1s)")


def test_3_coverage_equality(compiled, say):
    bad = []
    total = 0.0
    polys = {i for i, _ in compiled}
    for (i, mode), (p, res, dt) in compiled.items():
        total += dt
        t0 = time.perf_counter()
        fs = foldsim.evaluate(res.pattern)
        rep = foldsim.verify(fs, p, res.face_map, mode)
        align = foldsim.alignment(fs, res.face_map)
        placed = foldsim.FoldedState(fs.pattern, fs.faces, fs.owner,
                                     {k: align @ v for k, v in fs.placements.items()})
        cover = foldsim.layer_accounting(placed)
        total += time.perf_counter() - t0
        if not rep.coverage_ok or set(cover) != target_squares(p):
            bad.append((i, mode))
    ok = not bad and len(polys) >= 50 and total < 30
    say(3, "coverage equality", ok, f"{len(polys)} polycubes (seed {CORPUS_SEED}) x {len(MODES)} modes, "
                                    f"{len(bad)} mismatches, {total:.1f}s total (limit 30s)")


def test_4_seam_census(compiled, say):
    bad = []
    for (i, mode), (p, res, _) in compiled.items():
        seamed = res.report.seamed_faces
        want = [p.default_seam_face()] if mode == RECT_SEAM else []
        if seamed != want:
            bad.append((i, mode, seamed))
    say(4, "seam census", not bad, f"{len(compiled)} results, {len(bad)} with unexpected seams")


def test_5_loop_closure_and_path_independence(compiled, say):
    bad = []
    for (i, mode), (_, res, _) in compiled.items():
        bfs = foldsim.evaluate(res.pattern, "bfs")
        dfs = foldsim.evaluate(res.pattern, "dfs")
        same = all(bfs.triangle_placement(t) == dfs.triangle_placement(t) for t in bfs.owner)
        if not same or foldsim.check_loop_closure(bfs):
            bad.append((i, mode))
    say(5, "loop closure & path independence", not bad,
        f"{len(compiled)} patterns evaluated in two orders, {len(bad)} disagreements or open loops")


def test_6_area_conservation(compiled, say):
    bad = []
    for (i, mode), (_, res, _) in compiled.items():
        area = sum(foldsim.layer_accounting(foldsim.evaluate(res.pattern)).values())
        if area != res.pattern.width * res.pattern.height:
            bad.append((i, mode, area))
    one = fold_rect_seam(Polycube.of([(0, 0, 0)]))
    base = sum(foldsim.layer_accounting(foldsim.evaluate(one.pattern)).values())
    ok = not bad and base == 15
    say(6, "area conservation", ok, f"{len(bad)} violations; n=1 rect_seam total area = {base}")


def test_7_diameter(say):
    tower = Polycube.of([(0, 0, 0), (0, 0, 1), (0, 0, 2)])
    res = fold_rect_seam(tower)
    fs = foldsim.evaluate(res.pattern)
    folded = foldsim.folded_diameter_sq(fs) ** 0.5 / 2
    flat = foldsim.flat_diameter_sq(res.pattern) ** 0.5 / 2
    ok = folded <= flat and folded >= 3
    say(7, "diameter", ok, f"1x1x3 tower: folded diameter {folded:.3f} <= flat diagonal {flat:.3f}, >= 3")


def test_8_determinism_and_roundtrip(compiled, tmp_path, say):
    lossy = [k for k, (_, res, _) in compiled.items() if parse_fold(export_fold(res.pattern)) != res.pattern]
    samples = [p for p in make_corpus() if p.n in (3, 6)][:2]
    outputs = []
    for run in range(2):
        blobs = []
        for k, p in enumerate(samples):
            src = tmp_path / f"p{k}.txt"
            src.write_text(format_polycube(p))
            for fmt in ("fold", "svg", "obj"):
                out = tmp_path / f"p{k}-{run}.{fmt}"
                cmd = [sys.executable, "-m", "boxpleat", "fold", "--format", fmt, str(src), "-o", str(out)]
                subprocess.run(cmd, check=True)
                blobs.append(out.read_bytes())
            stats = subprocess.run([sys.executable, "-m", "boxpleat", "stats", str(src)],
                                   check=True, capture_output=True)
            blobs.append(stats.stdout)
        outputs.append(blobs)
    identical = outputs[0] == outputs[1]
    ok = identical and not lossy
    say(8, "determinism & round trips", ok,
        f"CLI outputs byte-identical across runs: {identical}; FOLD round trip lossy for {len(lossy)} "
        f"of {len(compiled)} patterns")
