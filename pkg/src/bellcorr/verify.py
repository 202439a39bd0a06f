"""Cross-checks between closed forms, generic numerics and brute-force oracles.

Each check takes a seeded generator and returns ``(passed, detail)``. Checks
look up library functions through their modules at call time, so a test can
monkeypatch one and watch the matching check fail.
"""

from __future__ import annotations

import time
import zlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import channels, fidelity, linalg, measures, protocol, sampling, states, sweeps
from .states import BellDiagonal, StateClass

PAR = StateClass.PARALLEL
ANTI = StateClass.ANTIPARALLEL

DEFAULT_SEED = 20240517


@dataclass(frozen=True)
class CheckResult:
    key: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.key}: {self.detail}"


CHECKS: dict[str, Callable[[np.random.Generator], tuple[bool, str]]] = {}


def check(key: str):
    def register(fn):
        if key in CHECKS:
            raise ValueError(f"duplicate check {key}")
        CHECKS[key] = fn
        return fn

    return register


# Acceptance criteria and the checks that make each one up.
CRITERIA: dict[str, tuple[str, ...]] = {
    "lqu-endpoints": ("measures/lqu_endpoints",),
    "ordering-theorem": ("measures/lqu_ordering", "measures/wi_difference_identity"),
    "preparation-exactness": ("channels/preparation_exact", "channels/misaligned_conjugation"),
    "fidelity-agreement": ("fidelity/three_way_agreement", "fidelity/method_a_exact"),
    "optimal-not": ("channels/optimal_not_single_qubit", "fidelity/fig5_ordering", "fidelity/method_b_convergence"),
    "protocol": ("protocol/probabilities", "protocol/concurrence_closed", "protocol/endpoints", "protocol/mediator_ppt"),
    "noise": ("noise/depolarize_map", "noise/two_sided", "noise/fidelity_panel_vs_uhlmann", "noise/orderings"),
}


def _rng(seed: int, key: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(key.encode())])


def run_check(key: str, seed: int = DEFAULT_SEED) -> CheckResult:
    try:
        passed, detail = CHECKS[key](_rng(seed, key))
    except Exception as exc:  # a crash is a failed check, not a crashed report
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CheckResult(key, bool(passed), detail)


def run_checks(seed: int = DEFAULT_SEED, keys=None) -> list[CheckResult]:
    return [run_check(k, seed) for k in (keys or CHECKS)]


def report(results: list[CheckResult], seed: int) -> str:
    lines = [f"verify seed={seed}"]
    lines += [r.line() for r in results]
    failed = [r.key for r in results if not r.passed]
    lines.append(f"summary: {len(results) - len(failed)} passed, {len(failed)} failed")
    if failed:
        lines.append("failed: " + ", ".join(failed))
    return "\n".join(lines) + "\n"


def _e(x: float) -> str:
    return f"{x:.2e}"


# ---------------------------------------------------------------- core-linalg


@check("core-linalg/eig_reconstruction")
def _eig_reconstruction(rng):
    rec = unit = 0.0
    ordered = True
    for _ in range(1000):
        m = sampling.hermitian(rng, 4)
        w, v = linalg.eig_hermitian(m)
        rec = max(rec, np.abs(v @ np.diag(w) @ v.conj().T - m).max())
        unit = max(unit, np.abs(v.conj().T @ v - np.eye(4)).max())
        ordered &= bool(np.all(np.diff(w) <= 0))
    ok = rec < 1e-10 and unit < linalg.EPS_RECON and ordered
    return ok, f"1000 Hermitian 4x4: reconstruction {_e(rec)}, unitarity {_e(unit)}, descending {ordered}"


@check("core-linalg/eig_vs_numpy")
def _eig_vs_numpy(rng):
    worst = 0.0
    for dim in (2, 4, 8):
        for _ in range(100):
            m = sampling.hermitian(rng, dim)
            ours = linalg.eig_hermitian(m)[0]
            ref = np.linalg.eigvalsh(m)[::-1]
            worst = max(worst, np.abs(ours - ref).max())
    return worst < 1e-10, f"300 matrices of dim 2, 4, 8: max eigenvalue gap {_e(worst)}"


@check("core-linalg/psd_sqrt_square")
def _psd_sqrt_square(rng):
    worst = 0.0
    for _ in range(1000):
        m = sampling.density(rng, 4)
        r = linalg.psd_sqrt(m)
        worst = max(worst, np.abs(r @ r - m).max())
    diag = np.abs(linalg.psd_sqrt(np.diag([4.0, 1.0])) - np.diag([2.0, 1.0])).max()
    return worst < 1e-10 and diag < 1e-12, f"1000 PSD 4x4: max |R^2 - M| {_e(worst)}; diag(4,1) error {_e(diag)}"


@check("core-linalg/partial_trace_product")
def _partial_trace_product(rng):
    worst = 0.0
    for _ in range(500):
        a, b = sampling.density(rng, 2), sampling.density(rng, 2)
        ab = linalg.kron(a, b)
        worst = max(worst, np.abs(linalg.partial_trace(ab, "A") - a).max(), np.abs(linalg.partial_trace(ab, "B") - b).max())
    return worst < 1e-12, f"500 products: max factor error {_e(worst)}"


@check("core-linalg/uhlmann_basics")
def _uhlmann_basics(rng):
    self_err = sym_err = 0.0
    for _ in range(100):
        rho, sigma = sampling.density(rng, 4), sampling.density(rng, 4)
        self_err = max(self_err, abs(linalg.uhlmann_fidelity(rho, rho) - 1.0))
        sym_err = max(sym_err, abs(linalg.uhlmann_fidelity(rho, sigma) - linalg.uhlmann_fidelity(sigma, rho)))
    orth = linalg.uhlmann_fidelity(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
    ww = linalg.uhlmann_fidelity(states.to_density(BellDiagonal(1 / 3, 1 / 3, 1 / 3)), states.to_density(BellDiagonal(-1 / 3, -1 / 3, -1 / 3)))
    ok = self_err < 1e-9 and sym_err < linalg.EPS_NUM and orth < 1e-12 and abs(ww - np.sqrt(0.5)) < 1e-9
    return ok, f"|F(rho,rho)-1| {_e(self_err)}, asymmetry {_e(sym_err)}, orthogonal {_e(orth)}, Werner pair {ww:.12f}"


# --------------------------------------------------------------------- states


@check("states/bell_eigenvalue_sum")
def _bell_eigenvalue_sum(rng):
    worst = max(abs(states.bell_eigenvalues(s).sum() - 1.0) for s in sampling.tetrahedron(rng, 1000))
    return worst <= 1e-15, f"1000 physical triples: max |sum - 1| {_e(worst)}"


@check("states/from_density_roundtrip")
def _from_density_roundtrip(rng):
    worst = 0.0
    for s in sampling.tetrahedron(rng, 500):
        back = states.from_density(states.to_density(s))
        worst = max(worst, np.abs(back.as_array() - s.as_array()).max())
    return worst < 1e-12, f"500 physical triples: max coefficient error {_e(worst)}"


@check("states/pauli_class_invariance")
def _pauli_class_invariance(rng):
    mismatched = 0
    flip_err = 0.0
    for s in sampling.tetrahedron(rng, 200):
        rho = states.to_density(s)
        cls = states.class_of(s)
        for pa in linalg.PAULIS:
            for pb in linalg.PAULIS:
                u = linalg.kron(pa, pb)
                if states.class_of(states.from_density(u @ rho @ u.conj().T)) is not cls:
                    mismatched += 1
        u = linalg.kron(linalg.X, linalg.I2)
        flipped = states.from_density(u @ rho @ u).as_array()
        flip_err = max(flip_err, np.abs(flipped - np.array([s.t1, -s.t2, -s.t3])).max())
    return mismatched == 0 and flip_err < 1e-12, f"200 states x 16 Pauli pairs: {mismatched} class changes; sigma1 (x) I sign flip error {_e(flip_err)}"


@check("states/boundary_convertibility")
def _boundary_convertibility(rng):
    worst = 0.0
    u = linalg.kron(linalg.I2, linalg.Z)
    for s in sampling.admissible(rng, 200):
        a = BellDiagonal(s.t1, s.t2, 0.0)
        worst = max(worst, np.abs(u @ states.to_density(a) @ u - states.to_density(-a)).max())
    return worst < 1e-12, f"200 triples with t3 = 0: max |(I (x) Z) rho_par (I (x) Z) - rho_anti| {_e(worst)}"


@check("states/ensemble_reconstruction")
def _ensemble_reconstruction(rng):
    worst = 0.0
    for s in sampling.admissible(rng, 1000):
        for cls, target in ((PAR, s), (ANTI, -s)):
            ens = states.ensemble_decomposition(s, cls)
            worst = max(worst, np.abs(ens.density() - states.to_density(target)).max())
    return worst < 1e-12, f"1000 octahedron samples, both classes: max error {_e(worst)}"


@check("states/correlation_rank_examples")
def _correlation_rank_examples(rng):
    got = (
        states.correlation_rank(channels.classical_seed(PAR)),
        states.correlation_rank(states.to_density(states.werner(1 / 3, PAR))),
        states.correlation_rank(np.eye(4) / 4),
    )
    return got == (2, 4, 1), f"ranks (classical seed, Werner, I/4) = {got}"


# ------------------------------------------------------------------- measures


@check("measures/lqu_endpoints")
def _lqu_endpoints(rng):
    start = time.perf_counter()
    expected = {PAR: 1 / 3, ANTI: 1 - 0.5 * (np.sqrt(4 / 3) + 2 / 3)}
    closed_err = generic_err = oracle_err = 0.0
    for cls, want in expected.items():
        s = states.werner(1 / 3, cls)
        rho = states.to_density(s)
        generic = measures.lqu(rho).value
        closed_err = max(closed_err, abs(measures.lqu_bell_closed(s) - want))
        generic_err = max(generic_err, abs(generic - want), abs(measures.lqu_bell_closed(s) - generic))
        oracle_err = max(oracle_err, abs(measures.lqu_oracle(rho) - generic))
    elapsed = time.perf_counter() - start
    ok = closed_err < 1e-9 and generic_err < 1e-9 and oracle_err < 1e-5 and elapsed < 10.0
    return ok, (
        f"closed error {_e(closed_err)}, generic error {_e(generic_err)}, oracle gap {_e(oracle_err)}, "
        f"within 10 s: {elapsed < 10.0}"
    )


@check("measures/lqu_closed_vs_generic")
def _lqu_closed_vs_generic(rng):
    worst = 0.0
    for s in sampling.tetrahedron(rng, 1000):
        worst = max(worst, abs(measures.lqu_bell_closed(s) - measures.lqu(states.to_density(s)).value))
    return worst < 1e-9, f"1000 physical triples of any sign: max gap {_e(worst)}"


@check("measures/lqu_oracle_agreement")
def _lqu_oracle_agreement(rng):
    worst = 0.0
    for s in sampling.octahedron(rng, 50):
        u = linalg.kron(sampling.unitary(rng), sampling.unitary(rng))
        rho = u @ states.to_density(s) @ u.conj().T
        worst = max(worst, abs(measures.lqu_oracle(rho) - measures.lqu(rho).value))
    return worst < 1e-5, f"50 locally rotated separable states: max oracle gap {_e(worst)}"


@check("measures/lqu_local_unitary_b")
def _lqu_local_unitary_b(rng):
    worst = 0.0
    for _ in range(200):
        rho = sampling.density(rng, 4)
        u = linalg.kron(linalg.I2, sampling.unitary(rng))
        worst = max(worst, abs(measures.lqu(u @ rho @ u.conj().T).value - measures.lqu(rho).value))
    return worst < 1e-9, f"200 random states: max change under I (x) U {_e(worst)}"


@check("measures/skew_information")
def _skew_information(rng):
    lowest = np.inf
    commuting = 0.0
    weakest = np.inf
    for _ in range(300):
        rho = sampling.density(rng, 4)
        k = sampling.hermitian(rng, 4)
        val = measures.skew_information(rho, k)
        lowest = min(lowest, val)
        if np.abs(rho @ k - k @ rho).max() > 1e-6:
            weakest = min(weakest, val)
        _, vecs = linalg.eig_hermitian(rho)
        kc = vecs @ np.diag(rng.normal(size=4)) @ vecs.conj().T
        commuting = max(commuting, abs(measures.skew_information(rho, kc)))
    ok = lowest >= -1e-12 and commuting < 1e-9 and weakest > 1e-12
    return ok, f"min value {_e(lowest)}, commuting max {_e(commuting)}, non-commuting min {_e(weakest)}"


@check("measures/lqu_ordering")
def _lqu_ordering(rng):
    min_gap = np.inf
    strict_fail = equal_err = 0
    worst_eq = 0.0
    for s in sampling.octahedron(rng, 1000):
        a = BellDiagonal(abs(s.t1), abs(s.t2), abs(s.t3))
        gap = measures.lqu(states.to_density(a)).value - measures.lqu(states.to_density(-a)).value
        min_gap = min(min_gap, gap)
        strict_fail += gap <= 0
    for s in sampling.admissible(rng, 200):
        a = BellDiagonal(s.t1, s.t2, 0.0) if rng.random() < 0.5 else BellDiagonal(0.0, s.t2, s.t3)
        diff = abs(measures.lqu(states.to_density(a)).value - measures.lqu(states.to_density(-a)).value)
        worst_eq = max(worst_eq, diff)
        equal_err += diff > 1e-9
    ok = strict_fail == 0 and equal_err == 0
    return ok, (
        f"1000 samples with t1 t2 t3 > 0: {strict_fail} violations, smallest gap {_e(min_gap)}; "
        f"200 boundary samples: max gap {_e(worst_eq)}"
    )


@check("measures/wi_difference_identity")
def _wi_difference_identity(rng):
    worst = 0.0
    for s in sampling.admissible(rng, 1000):
        wp = np.diag(measures.lqu_w_matrix(states.to_density(s)))
        wm = np.diag(measures.lqu_w_matrix(states.to_density(-s)))
        worst = max(worst, np.abs(wp**2 - wm**2 - measures.wi_difference(s)).max())
    return worst < 1e-10, f"1000 admissible triples, all three w_i: max error {_e(worst)}"


@check("measures/concurrence_examples")
def _concurrence_examples(rng):
    singlet = states.to_density(BellDiagonal(-1.0, -1.0, -1.0))
    vals = (
        measures.concurrence(singlet),
        measures.concurrence(states.to_density(states.werner(1 / 3, ANTI))),
        measures.concurrence(protocol.rho_minus_closed(1 / 3)),
    )
    sep = max(measures.concurrence(states.to_density(s)) for s in sampling.octahedron(rng, 300))
    ok = abs(vals[0] - 1) < 1e-10 and vals[1] < 1e-10 and abs(vals[2] - 1) < 1e-10 and sep < 1e-10
    return ok, f"singlet {vals[0]:.12f}, anti-parallel Werner {_e(vals[1])}, rho_minus {vals[2]:.12f}, separable max {_e(sep)}"


# ------------------------------------------------------------------- channels


@check("channels/preparation_exact")
def _preparation_exact(rng):
    worst = 0.0
    for s in sampling.admissible(rng, 500):
        ch = channels.preparation_channel(s)
        worst = max(
            worst,
            np.abs(channels.apply_channel(ch, channels.classical_seed(PAR)) - states.to_density(s)).max(),
            np.abs(channels.apply_channel(ch, channels.classical_seed(ANTI)) - states.to_density(-s)).max(),
        )
    return worst < 1e-12, f"500 admissible triples, both seeds: max error {_e(worst)}"


@check("channels/misaligned_conjugation")
def _misaligned_conjugation(rng):
    worst = 0.0
    triples = sampling.admissible(rng, 100)
    for theta in np.linspace(0.0, np.pi, 64):
        u = linalg.kron(linalg.I2, channels.frame_rotation(theta))
        for s in triples:
            ideal = channels.preparation_channel(s)
            bent = channels.misaligned_channel(s, theta)
            for cls in (PAR, ANTI):
                seed = channels.classical_seed(cls)
                want = u @ channels.apply_channel(ideal, seed) @ u.conj().T
                worst = max(worst, np.abs(channels.apply_channel(bent, seed) - want).max())
    return worst < 1e-12, f"64 angles x 100 triples x 2 seeds: max error {_e(worst)}"


@check("channels/trace_and_positivity")
def _trace_and_positivity(rng):
    tr_err = 0.0
    lowest = np.inf
    for s in sampling.admissible(rng, 1000):
        ch = channels.misaligned_channel(s, rng.uniform(0, 2 * np.pi))
        out = channels.apply_channel(ch, sampling.density(rng, 4))
        tr_err = max(tr_err, abs(np.trace(out).real - 1.0))
        lowest = min(lowest, linalg.eig_hermitian(out)[0][-1])
    return tr_err < 1e-12 and lowest >= -1e-12, f"1000 channel-state pairs: trace error {_e(tr_err)}, min eigenvalue {_e(lowest)}"


@check("channels/sigma1_phase")
def _sigma1_phase(rng):
    worst = 0.0
    for _ in range(100):
        rho = sampling.density(rng, 2)
        worst = max(worst, np.abs(channels.SIGMA1 @ rho @ channels.SIGMA1.conj().T - linalg.X @ rho @ linalg.X).max())
    return worst < 1e-12, f"conjugation by -i R_x(pi) vs sigma1: max gap {_e(worst)}"


@check("channels/depolarize_covariance")
def _depolarize_covariance(rng):
    worst = 0.0
    for s in sampling.tetrahedron(rng, 300):
        p = rng.uniform()
        rho = states.to_density(s)
        for side in ("A", "B"):
            got = states.from_density(channels.depolarize(rho, side, p)).as_array()
            worst = max(worst, np.abs(got - (1 - p) * s.as_array()).max())
    full = np.abs(channels.depolarize(states.to_density(s), "B", 1.0) - np.eye(4) / 4).max()
    return worst < 1e-12 and full < 1e-12, f"300 states, both sides: max error {_e(worst)}; p = 1 gives I/4 within {_e(full)}"


@check("channels/optimal_not_single_qubit")
def _optimal_not_single_qubit(rng):
    worst = 0.0
    for n in range(1, 101):
        for _ in range(10):
            psi = sampling.pure_qubit(rng)
            perp = np.array([-psi[1].conjugate(), psi[0].conjugate()])
            out = channels.optimal_not_effective(np.outer(psi, psi.conj()), n)
            worst = max(worst, abs((perp.conj() @ out @ perp).real - (n + 1) / (n + 2)))
    return worst < 1e-12, f"N = 1..100, 10 pure states each: max |F - (N+1)/(N+2)| {_e(worst)}"


@check("channels/optimal_not_bloch")
def _optimal_not_bloch(rng):
    worst = 0.0
    for n in (1, 5, 10, 100):
        t = rng.uniform(0, 1 / 3)
        out = states.from_density(channels.optimal_not_effective(states.to_density(states.werner(t, ANTI)), n, "B"))
        worst = max(worst, np.abs(out.as_array() - channels.not_shrink(n) * t).max())
    return worst < 1e-12, f"anti-parallel Werner through the NOT on B: max error vs s t {_e(worst)}"


@check("channels/optimal_not_choi")
def _optimal_not_choi(rng):
    lows = [linalg.eig_hermitian(channels.choi_matrix(channels.optimal_not_map(n)))[0][-1] for n in range(1, 101)]
    ok = lows[0] >= -1e-12 and all(x < -1e-12 for x in lows[1:])
    return ok, f"min Choi eigenvalue N=1: {_e(lows[0])}, N=2: {_e(lows[1])}, N=100: {_e(lows[-1])}"


# ------------------------------------------------------------------- fidelity


@check("fidelity/tr_sqrt_2x2")
def _tr_sqrt_2x2(rng):
    worst = 0.0
    for _ in range(1000):
        m = sampling.density(rng, 2) * rng.uniform(0.1, 10)
        worst = max(worst, abs(fidelity.tr_sqrt_2x2(m) - np.sqrt(linalg.eig_hermitian(m)[0]).sum()))
    exact = (
        abs(fidelity.tr_sqrt_2x2(np.eye(2)) - 2),
        abs(fidelity.tr_sqrt_2x2(np.diag([4.0, 9.0])) - 5),
        abs(fidelity.tr_sqrt_2x2(np.diag([4.0, 0.0])) - 2),
        abs(fidelity.tr_sqrt_2x2(np.ones((2, 2))) - np.sqrt(2)),
    )
    ok = worst < 1e-12 and max(exact) < 1e-15
    return ok, f"1000 full-rank PSD 2x2: max gap {_e(worst)}; exact cases max error {_e(max(exact))}"


@check("fidelity/three_way_agreement")
def _three_way_agreement(rng):
    worst = 0.0
    triples = sampling.admissible(rng, 100)
    for theta in np.linspace(0.0, np.pi, 64):
        for s in triples:
            for cls, signed in ((PAR, s), (ANTI, -s)):
                vals = (
                    fidelity.fidelity_block(signed, theta),
                    fidelity.fidelity_misaligned_closed(s, cls, theta),
                    fidelity.fidelity_misaligned_oracle(s, theta, cls),
                )
                worst = max(worst, max(vals) - min(vals))
    return worst < 1e-9, f"64 angles x 100 triples x 2 classes: max spread {_e(worst)}"


@check("fidelity/method_a_exact")
def _method_a_exact(rng):
    exact = abs(fidelity.fidelity_method_a(1 / 3, np.pi / 2) - 2 / 3)
    worst = 0.0
    for t in np.linspace(0.0, 1 / 3, 20):
        target = states.to_density(states.werner(t, PAR))
        seed = channels.classical_seed(PAR)
        for theta in np.linspace(0.0, np.pi, 64):
            prepared = channels.apply_channel(channels.misaligned_channel(BellDiagonal(t, t, t), theta), seed)
            worst = max(worst, abs(fidelity.fidelity_method_a(t, theta) - linalg.uhlmann_fidelity(prepared, target)))
    return exact < 1e-12 and worst < 1e-9, f"|F_A(1/3, pi/2) - 2/3| {_e(exact)}; 20 x 64 grid vs oracle {_e(worst)}"


@check("fidelity/difference_sq")
def _difference_sq(rng):
    identity = 0.0
    positive = 0
    zero_err = 0.0
    for s in sampling.admissible(rng, 1000):
        theta = rng.uniform(0, np.pi)
        fp = fidelity.fidelity_misaligned_closed(s, PAR, theta)
        fa = fidelity.fidelity_misaligned_closed(s, ANTI, theta)
        d = fidelity.fidelity_difference_sq(s, theta)
        identity = max(identity, abs(fp**2 - fa**2 - d))
        positive += d >= 0
    for s in sampling.admissible(rng, 200):
        b = BellDiagonal(s.t1, s.t2, 0.0)
        zero_err = max(zero_err, abs(fidelity.fidelity_difference_sq(b, rng.uniform(0, np.pi))), abs(fidelity.fidelity_difference_sq(s, 0.0)))
    ok = identity < linalg.EPS_NUM and positive == 0 and zero_err < 1e-12
    return ok, f"1000 samples: identity error {_e(identity)}, {positive} non-negative; boundary and theta = 0 max {_e(zero_err)}"


@check("fidelity/werner_pair_vs_uhlmann")
def _werner_pair_vs_uhlmann(rng):
    worst = 0.0
    for x, y in rng.uniform(-1 / 3, 1.0, size=(100, 2)):
        rx = states.to_density(BellDiagonal(-x, -x, -x))
        ry = states.to_density(BellDiagonal(-y, -y, -y))
        worst = max(worst, abs(fidelity.fidelity_werner_pair(x, y) - linalg.uhlmann_fidelity(rx, ry)))
    return worst < 1e-10, f"100 random pairs: max gap {_e(worst)}"


@check("fidelity/method_b_closed_vs_numeric")
def _method_b_closed_vs_numeric(rng):
    worst = 0.0
    for _ in range(200):
        t, theta, n = rng.uniform(0, 1 / 3), rng.uniform(0, np.pi), int(rng.integers(1, 101))
        worst = max(worst, abs(fidelity.fidelity_method_b(t, theta, n) - fidelity.fidelity_method_b_closed(t, theta, n)))
    return worst < 1e-9, f"200 random (t, theta, N): max gap {_e(worst)}"


def _method_b_points(rng):
    return [(rng.uniform(0, 1 / 3), rng.uniform(0, np.pi)) for _ in range(20)]


@check("fidelity/method_b_monotone_in_n")
def _method_b_monotone_in_n(rng):
    bad = []
    for t, theta in _method_b_points(rng):
        vals = np.array([fidelity.fidelity_method_b(t, theta, n) for n in range(1, 101)])
        if np.any(np.diff(vals) < -1e-12):
            bad.append(theta)
    detail = f"{len(bad)} of 20 random (t, theta) decrease somewhere in N = 1..100"
    if bad:
        detail += f"; smallest such theta {min(bad):.4f}"
    return not bad, detail


@check("fidelity/method_b_below_a")
def _method_b_below_a(rng):
    bad = []
    for t, theta in _method_b_points(rng):
        fa = fidelity.fidelity_method_a(t, theta)
        if any(fidelity.fidelity_method_b(t, theta, n) > fa + 1e-12 for n in range(1, 101)):
            bad.append(theta)
    detail = f"{len(bad)} of 20 random (t, theta) have F_B > F_A for some N in 1..100"
    if bad:
        detail += f"; smallest such theta {min(bad):.4f}"
    return not bad, detail


@check("fidelity/fig5_ordering")
def _fig5_ordering(rng):
    table = sweeps.optnot_compare(1 / 3, 181, (1, 5, 10, 100))
    cols = ["fidelity_b_n1", "fidelity_b_n5", "fidelity_b_n10", "fidelity_b_n100", "fidelity_a"]
    vals = np.column_stack([table.column(c) for c in cols])
    ok_rows = np.all(np.diff(vals, axis=1) > 0, axis=1)
    theta = table.column("theta")
    detail = f"{int(ok_rows.sum())} of 181 angles in [0, pi] ordered at t = 1/3"
    if not ok_rows.all():
        bad = theta[~ok_rows]
        detail += f"; violated for theta in [{bad.min():.4f}, {bad.max():.4f}]"
    return bool(ok_rows.all()), detail


@check("fidelity/method_b_convergence")
def _method_b_convergence(rng):
    deficits = np.array([1.0 - fidelity.fidelity_method_b(1 / 3, 0.0, 10**k) for k in range(7)])
    ok = bool(np.all(np.diff(deficits) < 0)) and deficits[-1] < 1e-6
    return ok, f"1 - F_B(theta = 0) at N = 1, 10, .., 1e6: {', '.join(_e(d) for d in deficits)}"


# ------------------------------------------------------------------- protocol

_T_GRID = np.linspace(0.0, 1 / 3, 200)


@check("protocol/gates")
def _gates(rng):
    cz = protocol.cz_gate()
    basis = np.eye(4)
    ok = np.allclose(cz @ basis[0], basis[0]) and np.allclose(cz @ basis[3], -basis[3]) and np.allclose(cz @ cz, np.eye(4))
    # CZ(A, C) flips the sign of |1 b 1>; CZ(B, C) of |a 1 1>.
    ac = np.diag(protocol.cz_ac()).real
    bc = np.diag(protocol.cz_bc()).real
    want_ac = np.array([1, 1, 1, 1, 1, -1, 1, -1])
    want_bc = np.array([1, 1, 1, -1, 1, 1, 1, -1])
    ok = ok and np.array_equal(ac, want_ac) and np.array_equal(bc, want_bc)
    return bool(ok), f"CZ examples and 8x8 embeddings match: {bool(ok)}"


@check("protocol/initial_marginals")
def _initial_marginals(rng):
    worst = 0.0
    plus = np.full((2, 2), 0.5)
    for t in _T_GRID[::10]:
        for cls in (PAR, ANTI):
            st = protocol.assemble_initial(t, cls)
            worst = max(worst, np.abs(st.reduce_ab() - states.to_density(states.werner(t, cls))).max(), np.abs(st.reduce_c() - plus).max())
    return worst < 1e-12, f"AB and C marginals of the initial state: max error {_e(worst)}"


def _protocol_runs():
    return {(cls, i): protocol.run_protocol(t, cls) for cls in (PAR, ANTI) for i, t in enumerate(_T_GRID)}


@check("protocol/probabilities")
def _probabilities(rng):
    worst = 0.0
    for (cls, i), out in _protocol_runs().items():
        t = _T_GRID[i]
        p_minus = (1 - t) / 2 if cls is PAR else (1 + t) / 2
        worst = max(worst, abs(out.p_minus - p_minus), abs(out.p_plus - (1 - p_minus)))
    return worst < 1e-12, f"200 t values, both classes: max probability error {_e(worst)}"


@check("protocol/concurrence_closed")
def _concurrence_closed(rng):
    worst = rho_err = 0.0
    plus_c = 0.0
    runs = _protocol_runs()
    for (cls, i), out in runs.items():
        t = _T_GRID[i]
        worst = max(worst, abs(out.c_minus - protocol.closed_form_concurrence(t, cls)))
        signed = t if cls is PAR else -t
        rho_err = max(rho_err, np.abs(out.rho_minus - protocol.rho_minus_closed(signed)).max())
        plus_c = max(plus_c, out.c_plus, np.abs(out.rho_plus - np.diag(np.diag(out.rho_plus))).max())
    ordered = all(runs[(PAR, i)].c_minus > runs[(ANTI, i)].c_minus for i in range(1, len(_T_GRID)))
    ok = worst < 1e-10 and rho_err < 1e-12 and plus_c < 1e-12 and ordered
    return ok, (
        f"concurrence error {_e(worst)}, rho_minus error {_e(rho_err)}, "
        f"rho_plus off-diagonal/concurrence {_e(plus_c)}, parallel above anti-parallel for t > 0: {ordered}"
    )


@check("protocol/endpoints")
def _endpoints(rng):
    cp = protocol.run_protocol(1 / 3, PAR).c_minus
    ca = protocol.run_protocol(1 / 3, ANTI).c_minus
    z = protocol.run_protocol(0.0, PAR)
    ok = abs(cp - 1) < 1e-10 and abs(ca - 0.5) < 1e-10 and abs(z.p_plus - 0.5) < 1e-12 and z.c_minus < 1e-12
    return ok, f"C_par(1/3) = {cp:.12f}, C_anti(1/3) = {ca:.12f}, t = 0 gives p = {z.p_plus:.12f}, C = {_e(z.c_minus)}"


@check("protocol/mediator_ppt")
def _mediator_ppt(rng):
    failures = []
    worst = 0.0
    for cls in (PAR, ANTI):
        for t in _T_GRID:
            mins = protocol.mediator_pt_min_eigenvalues(protocol.protocol_trace(t, cls))
            worst = min(worst, min(mins))
            failures += [step for step, m in enumerate(mins) if m < -linalg.EPS_PSD]
    steps = sorted(set(failures))
    names = ["initial", "after CZ(A,C)", "after CZ(B,C)"]
    detail = f"{len(failures)} of {3 * 2 * len(_T_GRID)} snapshots NPT across C|AB"
    if failures:
        detail += f" (steps: {', '.join(names[s] for s in steps)}); most negative eigenvalue {worst:.12f}"
    return not failures, detail


# ---------------------------------------------------------------------- noise

_P_GRID = np.linspace(0.0, 1.0, 200)


@check("noise/depolarize_map")
def _depolarize_map(rng):
    worst = 0.0
    for p in _P_GRID:
        for cls in (PAR, ANTI):
            s = states.werner(1 / 3, cls)
            got = states.from_density(channels.depolarize(states.to_density(s), "B", p))
            worst = max(worst, np.abs(got.as_array() - (1 - p) * s.as_array()).max())
    return worst < 1e-12, f"200 p values, both Werner classes: max error {_e(worst)}"


@check("noise/two_sided")
def _two_sided(rng):
    worst = 0.0
    for _ in range(200):
        p, q = rng.uniform(size=2)
        for cls in (PAR, ANTI):
            s = states.werner(rng.uniform(0, 1 / 3), cls)
            rho = channels.depolarize(channels.depolarize(states.to_density(s), "A", p), "B", q)
            worst = max(worst, np.abs(states.from_density(rho).as_array() - (1 - p) * (1 - q) * s.as_array()).max())
    return worst < 1e-12, f"200 random (p, p'), both classes: max error {_e(worst)}"


@check("noise/fidelity_panel_vs_uhlmann")
def _fidelity_panel_vs_uhlmann(rng):
    table = sweeps.noise_robustness(1 / 3, len(_P_GRID))
    worst = 0.0
    for cls, col in ((PAR, "fidelity_parallel"), (ANTI, "fidelity_antiparallel")):
        rho = states.to_density(states.werner(1 / 3, cls))
        for p, f in zip(table.column("p"), table.column(col)):
            worst = max(worst, abs(f - linalg.uhlmann_fidelity(rho, channels.depolarize(rho, "B", p))))
    return worst < 1e-9, f"200 p values, both classes: max gap {_e(worst)}"


@check("noise/lqu_closed")
def _noise_lqu_closed(rng):
    table = sweeps.noise_robustness(1 / 3, len(_P_GRID))
    worst = 0.0
    for sign, col in ((1.0, "lqu_parallel"), (-1.0, "lqu_antiparallel")):
        tau = sign * (1 / 3) * (1 - table.column("p"))
        closed = 1 - 0.5 * (np.sqrt(np.clip((1 - 3 * tau) * (1 + tau), 0, None)) + 1 + tau)
        worst = max(worst, np.abs(closed - table.column(col)).max())
    return worst < 1e-9, f"isotropic LQU formula vs generic path: max gap {_e(worst)}"


@check("noise/orderings")
def _orderings(rng):
    table = sweeps.noise_robustness(1 / 3, len(_P_GRID))
    lqu_ok = bool(np.all(table.column("lqu_parallel") >= table.column("lqu_antiparallel") - 1e-12))
    fid_ok = bool(np.all(table.column("fidelity_parallel") <= table.column("fidelity_antiparallel") + 1e-12))
    return lqu_ok and fid_ok, f"LQU parallel >= anti-parallel: {lqu_ok}; fidelity parallel <= anti-parallel: {fid_ok}"
