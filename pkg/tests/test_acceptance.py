"""Acceptance criteria, one check per criterion.

Run under pytest (a PASS/FAIL summary line per criterion is printed at the end
of the session) or directly with ``python3 tests/test_acceptance.py``.
"""
import math
import subprocess
import sys
import time
import warnings
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gbsim.ensembles import coe_matrix, haar_unitary
from gbsim.errors import RankDeficiencyWarning
from gbsim.hafnian import hafnian_pmp, hafnian_recursive, hafnian_via_permanent_embedding, permanent_ryser
from gbsim.linalg import determinant, direct_sum
from gbsim.probability import (
    PpeDistributionSpec,
    generation_ratio,
    pattern_probability_general,
    pattern_probability_squeezed,
    ppe_distribution,
    ppe_tail,
)
from gbsim.sampler import build_distribution, draw, draw_indices, empirical_tv_distance
from gbsim.state import b_matrix, output_state, sampling_matrix_a, sigma_q

from conftest import symmetric_beamsplitter

RESULTS: dict[str, tuple[bool, str]] = {}


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def _complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def check_hafnian_algorithms():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst = 0.0
    for n in range(2, 13, 2):
        for _ in range(50):
            g = _complex(rng, (n, n))
            a = (g + g.T) / 2
            worst = max(worst, _rel(hafnian_pmp(a), hafnian_recursive(a)))
    elapsed = time.perf_counter() - start
    return worst <= 1e-9 and elapsed < 30, f"max rel {worst:.2e}, {elapsed:.2f} s"


def check_permanent_embedding():
    rng = np.random.default_rng(2)
    worst = 0.0
    for n in range(1, 7):
        for _ in range(20):
            g = _complex(rng, (n, n))
            worst = max(worst, _rel(hafnian_via_permanent_embedding(g), permanent_ryser(g)))
    return worst <= 1e-9, f"max rel {worst:.2e}"


def check_single_mode():
    worst = 0.0
    for r in (0.3, 0.5, 0.8, 1.2):
        for n in range(9):
            if n % 2:
                expected = 0.0
            else:
                k = n // 2
                expected = math.factorial(2 * k) / (2**k * math.factorial(k)) ** 2 * math.tanh(r) ** (2 * k) / math.cosh(r)
            for p in (pattern_probability_squeezed(np.eye(1), [r], [n]),
                      pattern_probability_general(output_state(np.eye(1), [r]), [n])):
                worst = max(worst, abs(p - expected))
    return worst <= 1e-10, f"max abs {worst:.2e}"


def check_two_mode_squeezed():
    bs = symmetric_beamsplitter()
    worst = 0.0
    for r in (0.1, 0.4, 0.8):
        for n in range(5):
            for m in range(5):
                expected = math.tanh(r) ** (2 * n) / math.cosh(r) ** 2 if n == m else 0.0
                worst = max(worst, abs(pattern_probability_squeezed(bs, [r, r], (n, m)) - expected))
    return worst <= 1e-10, f"max abs {worst:.2e}"


def _tables():
    out = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RankDeficiencyWarning)
        for k in (2, 3):
            r = [0.4] * k + [0.0] * (4 - k)
            for seed in (11, 12, 13):
                out.append((k, seed, build_distribution(haar_unitary(4, seed), r, 6)))
    return out


def check_total_photon_law():
    worst = 0.0
    spread = 0.0
    for k in (2, 3):
        sums = []
        for kk, _, tab in _tables():
            if kk != k:
                continue
            per_total = np.zeros(7)
            for pat, p in zip(tab.patterns, tab.probabilities):
                per_total[sum(pat)] += p
            for n in range(4):
                worst = max(worst, abs(per_total[2 * n] - ppe_distribution(PpeDistributionSpec(k, 0.4, n))))
            sums.append(per_total)
        spread = max(spread, float(np.max(np.ptp(np.array(sums), axis=0))))
    return worst <= 1e-8 and spread <= 1e-8, f"max abs {worst:.2e}, seed spread {spread:.2e}"


def check_normalization():
    worst = 0.0
    for k, _, tab in _tables():
        total = math.fsum(tab.probabilities) + ppe_tail(k, 0.4, 3)
        worst = max(worst, abs(total - 1))
    return worst <= 1e-8, f"max |sum - 1| {worst:.2e}"


def check_determinant_identity():
    rng = np.random.default_rng(7)
    worst = 0.0
    for i in range(20):
        m = int(rng.integers(1, 7))
        r = rng.uniform(0, 1.2, m)
        state = output_state(haar_unitary(m, 100 + i), r)
        expected = math.prod(math.cosh(x) ** 2 for x in r)
        worst = max(worst, _rel(determinant(sigma_q(state)).real, expected))
    return worst <= 1e-8, f"max rel {worst:.2e}"


def check_generation_ratio():
    exact, asymptotic = generation_ratio(400, 20)
    dev = abs(exact - asymptotic) / asymptotic
    _, a50 = generation_ratio(2500, 50)
    dev50 = abs(a50 - math.exp(-1)) / math.exp(-1)
    return dev <= 0.05 and dev50 <= 0.02, f"(400,20) {dev:.2%} apart, N=50 {a50:.4f} ({dev50:.2%} from 1/e)"


def check_sampler(tmp_dir=None):
    import tempfile

    draws = 100_000
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RankDeficiencyWarning)
        tab = build_distribution(haar_unitary(4, 21), [0.4, 0.4, 0, 0], 6)
    counts = np.bincount(draw_indices(tab, draws, 2018), minlength=len(tab) + 1)
    exact = np.append(tab.probabilities, tab.residual)
    sd = np.sqrt(draws * exact * (1 - exact))
    in_band = bool(np.all(np.abs(counts - draws * exact) <= 5 * sd))
    tv = empirical_tv_distance(tab, draw(tab, draws, 2018), draws)
    argv = [sys.executable, "-m", "gbsim.cli", "sample", "--modes", "4", "--squeeze", "0.4", "0.4",
            "--haar-seed", "21", "--cutoff", "6", "--draws", str(draws), "--sample-seed", "2018"]
    with tempfile.TemporaryDirectory(dir=tmp_dir) as d:
        files = [Path(d) / "a.json", Path(d) / "b.json"]
        for f in files:
            subprocess.run(argv + ["--out", str(f)], check=True, capture_output=True)
        same = files[0].read_bytes() == files[1].read_bytes()
    return in_band and tv <= 0.01 and same, f"5-sigma bands {in_band}, TV {tv:.4f}, byte-identical {same}"


def check_block_structure():
    rng = np.random.default_rng(10)
    worst_a = worst_sym = 0.0
    for i in range(20):
        m = int(rng.integers(1, 7))
        r = rng.uniform(0, 1.0, m)
        t = haar_unitary(m, 200 + i)
        b = b_matrix(t, r)
        a = sampling_matrix_a(output_state(t, r))
        worst_a = max(worst_a, float(np.max(np.abs(a - direct_sum(b, b.conj())))))
        worst_sym = max(worst_sym, float(np.max(np.abs(b - b.T))))
    return worst_a <= 1e-8 and worst_sym <= 1e-10, f"A residual {worst_a:.2e}, B asymmetry {worst_sym:.2e}"


def check_ensembles():
    t = haar_unitary(8, 5).t
    unitarity = float(np.max(np.abs(t.conj().T @ t - np.eye(8))))
    m, n = 4, 10_000
    vals = np.array([abs(haar_unitary(m, s).t[0, 0]) ** 2 for s in range(n)])
    se = vals.std(ddof=1) / math.sqrt(n)
    z = abs(vals.mean() - 1 / m) / se
    c = coe_matrix(8, 5)
    sym = float(np.max(np.abs(c - c.T)))
    ok = unitarity <= 1e-12 and z <= 3 and sym <= 1e-12
    return ok, f"unitarity {unitarity:.2e}, |T11|^2 mean {vals.mean():.4f} ({z:.2f} SE), COE asymmetry {sym:.2e}"


CRITERIA = [
    ("1 hafnian algorithms agree", check_hafnian_algorithms),
    ("2 permanent embedding", check_permanent_embedding),
    ("3 single-mode oracle", check_single_mode),
    ("4 two-mode squeezed oracle", check_two_mode_squeezed),
    ("5 total-photon law", check_total_photon_law),
    ("6 normalization", check_normalization),
    ("7 determinant identity", check_determinant_identity),
    ("8 generation ratio", check_generation_ratio),
    ("9 sampler fidelity", check_sampler),
    ("10 block structure", check_block_structure),
    ("11 ensembles", check_ensembles),
]


def _record(name, fn):
    ok, detail = fn()
    RESULTS[name] = (ok, detail)
    return ok, detail


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, fn):
    ok, detail = _record(name, fn)
    assert ok, f"{name}: {detail}"


def summary_lines():
    return [f"{'PASS' if ok else 'FAIL'}  {name}: {detail}" for name, (ok, detail) in RESULTS.items()]


if __name__ == "__main__":
    for name, fn in CRITERIA:
        _record(name, fn)
        print(summary_lines()[-1], flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
