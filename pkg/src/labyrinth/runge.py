"""One-variable polynomials with a large real part on the critical segment
{Re z = 1} of the closed disc 2D and a certified small modulus on
{Re z <= 1 - nu}.

The fit is a linear program over the polynomial coefficients; certification
is independent of the fit: dense sampling of the relevant boundary curves
plus a derivative (Lipschitz) bound turns sampled extrema into continuous
bounds.  |phi| on the region {Re z <= 1 - nu} is certified on its boundary
alone (maximum modulus), and real-part minima are likewise certified on
region boundaries (harmonicity).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import linprog

from .errors import DegreeExhausted

DISC_RADIUS = 2.0
DEFAULT_SCHEDULE = (4, 8, 16, 32, 64, 128)


@dataclass(frozen=True)
class UniPoly:
    """Polynomial sum a_k z^k with complex coefficients, Horner evaluation."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-D array")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full_like(z, self.coeffs[-1])
        for a in self.coeffs[-2::-1]:
            out = out * z + a
        return out

    def eval_sum(self, z):
        """Plain coefficient-sum evaluation (consistency oracle for Horner)."""
        z = np.asarray(z, dtype=complex)
        powers = z[..., None] ** np.arange(self.coeffs.size)
        return powers @ self.coeffs

    def derivative(self) -> "UniPoly":
        if self.degree == 0:
            return UniPoly(np.zeros(1, dtype=complex))
        k = np.arange(1, self.coeffs.size)
        return UniPoly(self.coeffs[1:] * k)

    def deriv_sup_bound(self, radius: float = DISC_RADIUS) -> float:
        """Coefficient bound on sup |phi'| over the radius-`radius` disc."""
        k = np.arange(self.coeffs.size)
        return float(np.sum(k[1:] * np.abs(self.coeffs[1:]) * radius ** (k[1:] - 1)))

    def shift(self, c: complex) -> "UniPoly":
        out = self.coeffs.copy()
        out[0] += c
        return UniPoly(out)

    def to_json(self) -> str:
        return json.dumps(
            {"re": [repr(float(x.real)) for x in self.coeffs],
             "im": [repr(float(x.imag)) for x in self.coeffs]}
        )

    @classmethod
    def from_json(cls, text: str) -> "UniPoly":
        d = json.loads(text)
        re = np.array([float(x) for x in d["re"]])
        im = np.array([float(x) for x in d["im"]])
        return cls(re + 1j * im)


def shift_by_constant(p: UniPoly, c: float) -> UniPoly:
    """Add a constant to the polynomial (certificate levels translate by c)."""
    return p.shift(c)


@dataclass(frozen=True)
class SlabSpec:
    """Target regions inside the closed disc of radius 2.

    K1 = {Re z = 1} is where Re phi must exceed level + 1 (certified);
    K2 = {Re z <= 1 - nu_slab} is where |phi| must be at most eps_small.

    Optional extensions used when several barrier layers share one stage:
    `hi_band` extends the large-real-part requirement to {1 <= Re z <= 1 +
    hi_band}, and `floor` asks for Re phi >= -floor on the whole band
    {1 - nu_slab <= Re z <= 1 + hi_band} so that cross-layer compositions
    cannot push the sum down.
    """

    level: float
    eps_small: float
    nu_slab: float
    hi_band: float = 0.0
    floor: float | None = None

    def __post_init__(self):
        if not (0.0 < self.nu_slab < 1.0):
            raise ValueError("nu_slab must lie in (0, 1)")
        if self.eps_small <= 0.0:
            raise ValueError("eps_small must be positive")
        if self.hi_band < 0.0 or self.hi_band > 0.9:
            raise ValueError("hi_band out of range")

    # --- sample generators (arc-length spacing <= s on each curve) ---

    def k1_samples(self, s: float) -> np.ndarray:
        ymax = np.sqrt(DISC_RADIUS**2 - 1.0)
        n = _curve_count(2 * ymax, s, 9)
        y = np.linspace(-ymax, ymax, n)
        return 1.0 + 1j * y

    def hi_band_boundary_samples(self, s: float) -> np.ndarray:
        """Boundary of {1 <= Re z <= 1 + hi_band} within the disc."""
        if self.hi_band <= 0.0:
            return self.k1_samples(s)
        xs = (1.0, 1.0 + self.hi_band)
        parts = [_vertical_segment(x, s) for x in xs]
        parts.append(_arc_between(xs[0], xs[1], s))
        return np.concatenate(parts)

    def k2_boundary_samples(self, s: float) -> np.ndarray:
        """Boundary of {Re z <= 1 - nu} cap the disc: a chord plus an arc."""
        x0 = 1.0 - self.nu_slab
        return np.concatenate([_vertical_segment(x0, s), _arc_left_of(x0, s)])

    def k2_interior_samples(self, s: float) -> np.ndarray:
        """Interior mesh of K2 (cross-check only; boundary is authoritative)."""
        x0 = 1.0 - self.nu_slab
        xs = np.arange(-DISC_RADIUS, x0 + s, s)
        ys = np.arange(-DISC_RADIUS, DISC_RADIUS + s, s)
        gx, gy = np.meshgrid(xs, ys)
        z = gx + 1j * gy
        keep = (np.abs(z) <= DISC_RADIUS) & (z.real <= x0)
        return z[keep]

    def band_boundary_samples(self, s: float) -> np.ndarray:
        """Boundary of {1 - nu <= Re z <= 1 + hi_band} within the disc."""
        lo, hi = 1.0 - self.nu_slab, 1.0 + self.hi_band
        parts = [_vertical_segment(lo, s), _vertical_segment(hi, s),
                 _arc_between(lo, hi, s)]
        return np.concatenate(parts)

    def circle_samples(self, s: float) -> np.ndarray:
        n = _curve_count(2 * np.pi * DISC_RADIUS, s, 16)
        th = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
        return DISC_RADIUS * np.exp(1j * th)


# Hard cap on samples per curve: spacing requests below length/cap are
# clamped and the resulting certificate simply comes out weaker (honest).
MAX_CURVE_SAMPLES = 2_000_000


def _curve_count(length: float, s: float, lo: int) -> int:
    return int(min(max(np.ceil(length / s) + 1, lo), MAX_CURVE_SAMPLES))


def _vertical_segment(x: float, s: float) -> np.ndarray:
    if abs(x) >= DISC_RADIUS:
        return np.empty(0, dtype=complex)
    ymax = np.sqrt(DISC_RADIUS**2 - x * x)
    n = _curve_count(2 * ymax, s, 9)
    return x + 1j * np.linspace(-ymax, ymax, n)


def _arc_left_of(x0: float, s: float) -> np.ndarray:
    """Arc of the radius-2 circle with Re z <= x0."""
    th0 = np.arccos(np.clip(x0 / DISC_RADIUS, -1.0, 1.0))
    n = _curve_count(DISC_RADIUS * 2 * (np.pi - th0), s, 9)
    th = np.linspace(th0, 2 * np.pi - th0, n)
    return DISC_RADIUS * np.exp(1j * th)


def _arc_between(x_lo: float, x_hi: float, s: float) -> np.ndarray:
    """Arcs of the radius-2 circle with x_lo <= Re z <= x_hi (both halves)."""
    th_hi = np.arccos(np.clip(x_hi / DISC_RADIUS, -1.0, 1.0))
    th_lo = np.arccos(np.clip(x_lo / DISC_RADIUS, -1.0, 1.0))
    n = _curve_count(DISC_RADIUS * (th_lo - th_hi), s, 5)
    th = np.linspace(th_hi, th_lo, n)
    upper = DISC_RADIUS * np.exp(1j * th)
    return np.concatenate([upper, np.conj(upper)])


@dataclass(frozen=True)
class BoundCertificate:
    """Continuous bounds from sampled extrema plus a Lipschitz margin.

    Every `*_cert` field already includes the margin lip * spacing, so it
    holds at every point of the corresponding curve or region, not just at
    the samples.
    """

    spacing: float
    lip: float
    min_re_k1: float
    max_abs_k2: float
    re_k1_cert: float
    abs_k2_cert: float
    min_re_band: float | None = None
    re_band_cert: float | None = None
    max_abs_disc_cert: float | None = None

    def valid_for(self, spec: SlabSpec) -> bool:
        ok = (self.re_k1_cert >= spec.level + 1.0
              and self.abs_k2_cert <= spec.eps_small)
        if spec.floor is not None:
            ok = ok and (self.re_band_cert is not None
                         and self.re_band_cert >= -spec.floor)
        return bool(ok)


def _lipschitz_bound(p: UniPoly, circle_max_est: float | None = None) -> float:
    """sup |phi'| on the disc: coefficient bound, refined by Bernstein."""
    b_coef = p.deriv_sup_bound()
    if circle_max_est is not None and p.degree > 0:
        b_bern = p.degree * circle_max_est / DISC_RADIUS
        return float(min(b_coef, b_bern))
    return float(b_coef)


def certify(p: UniPoly, spec: SlabSpec, spacing: float | None = None) -> BoundCertificate:
    """Certify continuous bounds for `p` against `spec`.

    Boundary-only sampling: |phi| on K2 via its boundary (maximum modulus),
    Re phi minima via region boundaries (harmonic minimum principle).  The
    spacing adapts to the observed slack so the Lipschitz margin stays well
    inside it; an explicit `spacing` skips the adaptation.
    """
    # bootstrap Lipschitz constant from coefficients, then sharpen via the
    # certified disc maximum (Bernstein)
    s_floor = 7e-6  # keeps every curve under MAX_CURVE_SAMPLES points
    lip0 = p.deriv_sup_bound()
    s0 = max(spacing if spacing is not None else spec.nu_slab / 50.0, s_floor)
    s_circ = max(s0, 1e-3)
    circle = spec.circle_samples(s_circ)
    max_circle = float(np.max(np.abs(p(circle)))) + lip0 * s_circ
    lip = _lipschitz_bound(p, circle_max_est=max_circle)

    def sampled(s: float) -> tuple[float, float, float | None]:
        k1 = p(spec.hi_band_boundary_samples(s) if spec.hi_band > 0 else spec.k1_samples(s))
        k2 = p(spec.k2_boundary_samples(s))
        band = None
        if spec.floor is not None:
            band = float(np.min(p(spec.band_boundary_samples(s)).real))
        return float(np.min(k1.real)), float(np.max(np.abs(k2))), band

    min_re, max_abs, min_band = sampled(s0)
    s = s0
    if spacing is None and lip > 0.0:
        # refine so the margin consumes at most ~45% of the observed slack
        slacks = [min_re - (spec.level + 1.0), spec.eps_small - max_abs]
        if spec.floor is not None and min_band is not None:
            slacks.append(min_band + spec.floor)
        slack = min(slacks)
        if slack > 0.0 and lip * s0 > 0.45 * slack:
            s = max(0.45 * slack / lip, s_floor)
            if s < s0:
                min_re, max_abs, min_band = sampled(s)

    return BoundCertificate(
        spacing=s,
        lip=lip,
        min_re_k1=min_re,
        max_abs_k2=max_abs,
        re_k1_cert=min_re - lip * s,
        abs_k2_cert=max_abs + lip * s,
        min_re_band=min_band,
        re_band_cert=None if min_band is None else min_band - lip * s,
        max_abs_disc_cert=max_circle,
    )


def _power_matrix(z: np.ndarray, degree: int) -> np.ndarray:
    """Columns (z / 2)^k; the scaled basis keeps the LP well conditioned."""
    w = np.asarray(z, dtype=complex) / DISC_RADIUS
    return w[:, None] ** np.arange(degree + 1)


def _re_rows(powmat: np.ndarray) -> np.ndarray:
    return np.hstack([powmat.real, -powmat.imag])


def _im_rows(powmat: np.ndarray) -> np.ndarray:
    return np.hstack([powmat.imag, powmat.real])


def fit_runge(
    spec: SlabSpec,
    schedule: tuple[int, ...] = DEFAULT_SCHEDULE,
    ceiling: float | None = None,
    fit_spacing: float | None = None,
) -> tuple[UniPoly, BoundCertificate]:
    """Fit a polynomial meeting `spec` by linear programming.

    For each degree in the schedule, minimize t subject to
        Re phi >= level + 2           on K1 samples (one unit of slack),
        +-Re phi <= t, +-Im phi <= t  on K2 samples (so |phi| <= sqrt(2) t),
    plus, when requested, the band floor and a modulus ceiling on the outer
    circle (the ceiling also keeps the coefficients tame).  The first degree
    whose post-hoc certificate validates the spec wins.
    """
    target = spec.level + 2.0
    s_fit = fit_spacing if fit_spacing is not None else max(spec.nu_slab / 12.0, 0.01)
    best_t = None
    for degree in schedule:
        n_var = 2 * (degree + 1) + 1
        rows, rhs = [], []

        def add(mat_rows, rhs_vals, t_coef):
            block = np.zeros((mat_rows.shape[0], n_var))
            block[:, :-1] = mat_rows
            block[:, -1] = t_coef
            rows.append(block)
            rhs.append(rhs_vals)

        k1 = (spec.hi_band_boundary_samples(s_fit) if spec.hi_band > 0
              else spec.k1_samples(s_fit))
        pw = _power_matrix(k1, degree)
        add(-_re_rows(pw), np.full(len(k1), -target), 0.0)

        k2 = np.concatenate(
            [spec.k2_boundary_samples(s_fit), spec.k2_interior_samples(4 * s_fit)]
        )
        pw = _power_matrix(k2, degree)
        for sign in (1.0, -1.0):
            add(sign * _re_rows(pw), np.zeros(len(k2)), -1.0)
            add(sign * _im_rows(pw), np.zeros(len(k2)), -1.0)

        if spec.floor is not None:
            band = spec.band_boundary_samples(s_fit)
            pw = _power_matrix(band, degree)
            add(-_re_rows(pw), np.full(len(band), spec.floor / 2.0), 0.0)

        if ceiling is not None:
            circle = spec.circle_samples(max(s_fit, 0.05))
            pw = _power_matrix(circle, degree)
            for sign in (1.0, -1.0):
                add(sign * _re_rows(pw), np.full(len(circle), ceiling), 0.0)
                add(sign * _im_rows(pw), np.full(len(circle), ceiling), 0.0)

        a_ub = np.vstack(rows)
        b_ub = np.concatenate(rhs)
        cost = np.zeros(n_var)
        cost[-1] = 1.0
        bounds = [(None, None)] * (n_var - 1) + [(0.0, None)]
        res = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
        if not res.success:
            continue
        t = float(res.x[-1])
        best_t = t if best_t is None else min(best_t, t)
        b = res.x[: degree + 1] + 1j * res.x[degree + 1: 2 * (degree + 1)]
        coeffs = b / (DISC_RADIUS ** np.arange(degree + 1))
        cand = UniPoly(coeffs)
        cert = certify(cand, spec)
        if cert.valid_for(spec):
            return cand, cert
    raise DegreeExhausted(
        f"no degree in {schedule} certified level={spec.level} "
        f"eps={spec.eps_small} nu={spec.nu_slab}",
        best_t=best_t,
    )
