"""Finite-difference ground truth for the bound catalogue.

The oracle rasterizes an image domain by forward-mapping a fine lattice
of the base, builds the 5-point Dirichlet Laplacian on the marked cells,
and computes its lowest eigenvalues.  The raster is eroded by one layer,
so the discrete domain is a strict subset of the image and its
eigenvalues are biased high; that is the safe direction when checking
lower bounds.

Also provided: a numerical witness of the conformal energy identity (the
Dirichlet integral of a bump is invariant under composition with the
map), used as an end-to-end consistency check of maps and quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import ndimage, sparse
from scipy.sparse.linalg import LinearOperator, eigsh, lobpcg, splu

from .bounds import LAMBDA1_METHODS, BoundResult
from .errors import ConvergenceError, DomainError, RasterError
from .geometry import BaseDomain, Disc, DomainSpec, Rectangle, image_area
from .maps import Affine, AnalyticMap, Exp, Identity, Sin
from .norms import QuadratureConfig, _disc_rule, _rect_rule

#: Above this many unknowns the solver switches from shift-invert
#: Lanczos to LOBPCG with an algebraic-multigrid preconditioner.
DIRECT_SOLVER_LIMIT = 140_000

#: Cap on forward-mapped sample points in one rasterization.
MAX_RASTER_SAMPLES = 60_000_000

_LOBPCG_SEED = 20240613


@dataclass(frozen=True)
class RasterGrid:
    """A cell mask over a uniform pitch-h lattice.

    ``inside[iy, ix]`` marks unknown cells; the center of cell (ix, iy)
    sits at origin + (ix + 1/2) h + i (iy + 1/2) h.
    """

    h: float
    origin: complex
    nx: int
    ny: int
    inside: np.ndarray

    def __post_init__(self):
        if not (self.h > 0):
            raise DomainError("raster pitch must be positive")
        if self.inside.shape != (self.ny, self.nx):
            raise DomainError("mask shape must be (ny, nx)")
        if not bool(self.inside.any()):
            raise RasterError("raster contains no inside cells")

    @property
    def n_inside(self) -> int:
        return int(self.inside.sum())

    def cell_centers(self):
        """Complex coordinates of all inside-cell centers."""
        iy, ix = np.nonzero(self.inside)
        return (
            self.origin
            + (ix + 0.5) * self.h
            + 1j * (iy + 0.5) * self.h
        )


@dataclass(frozen=True)
class OracleResult:
    eigenvalues: tuple[float, ...]
    h: float
    iterations: int
    residual: float


@dataclass(frozen=True)
class ValidationRow:
    method: str
    bound_value: float
    reference: float
    tightness: float
    passed: bool


@dataclass(frozen=True)
class ValidationReport:
    rows: tuple[ValidationRow, ...]
    h: float
    lambda1_coarse: float
    lambda1_fine: float
    lambda1_extrapolated: float
    rel_band: float
    gap_extrapolated: Optional[float] = None

    @property
    def all_passed(self) -> bool:
        return all(row.passed for row in self.rows)


def _base_lattice(base: BaseDomain, n_points: int) -> np.ndarray:
    """Roughly n_points uniform samples of the base domain."""
    if isinstance(base, Rectangle):
        aspect = base.width / base.height
        nu = max(2, int(math.ceil(math.sqrt(n_points * aspect))))
        nv = max(2, int(math.ceil(n_points / nu)))
        u = base.x0 + (np.arange(nu) + 0.5) * (base.width / nu)
        v = base.y0 + (np.arange(nv) + 0.5) * (base.height / nv)
        return (u[None, :] + 1j * v[:, None]).ravel()
    if isinstance(base, Disc):
        n_side = max(2, int(math.ceil(math.sqrt(n_points * 4.0 / math.pi))))
        side = 2.0 * base.radius
        u = base.center.real - base.radius + (np.arange(n_side) + 0.5) * (side / n_side)
        v = base.center.imag - base.radius + (np.arange(n_side) + 0.5) * (side / n_side)
        z = (u[None, :] + 1j * v[:, None]).ravel()
        return z[np.abs(z - base.center) < base.radius]
    raise DomainError(f"unsupported base domain {type(base).__name__}")


def implied_slits(spec: DomainSpec) -> list[tuple[complex, complex]]:
    """Boundary slits of the image that forward sampling cannot see.

    The stock sin-on-rectangle pairing (x-range exactly (-pi/2, pi/2),
    symmetric y-range (-d, d)) maps the vertical edges onto the segments
    from the foci (+-1, 0) to the vertices (+-cosh d, 0); those slits are
    part of the image boundary and have to be cut into the raster
    explicitly.
    """
    base, mp = spec.base, spec.map
    if (
        isinstance(mp, Sin)
        and isinstance(base, Rectangle)
        and abs(base.x0 + 0.5 * math.pi) < 1e-9
        and abs(base.x1 - 0.5 * math.pi) < 1e-9
        and abs(base.y0 + base.y1) < 1e-9
    ):
        reach = math.cosh(base.y1)
        return [
            (complex(1.0, 0.0), complex(reach, 0.0)),
            (complex(-reach, 0.0), complex(-1.0, 0.0)),
        ]
    return []


def _segment_distance(px, py, a: complex, b: complex):
    """Distance from points (px, py) to the segment [a, b]."""
    abx, aby = b.real - a.real, b.imag - a.imag
    denom = abx * abx + aby * aby
    t = ((px - a.real) * abx + (py - a.imag) * aby) / denom
    t = np.clip(t, 0.0, 1.0)
    return np.hypot(px - (a.real + t * abx), py - (a.imag + t * aby))


def rasterize(spec: DomainSpec, h: float, samples_per_cell: int = 4) -> RasterGrid:
    """Mark every pitch-h cell hit by a forward-mapped base sample, then
    erode one layer.

    The base lattice is sized for about ``samples_per_cell**2`` mapped
    points per image cell on average.  Deterministic for fixed inputs.
    """
    if not (h > 0):
        raise DomainError("raster pitch h must be positive")
    if samples_per_cell < 1:
        raise DomainError("samples_per_cell must be >= 1")

    if spec.area is not None:
        approx_area = spec.area
    else:
        approx_area = image_area(spec, QuadratureConfig(8, 4, 32, 64))
    n_samples = samples_per_cell**2 * approx_area / h**2
    if n_samples > MAX_RASTER_SAMPLES:
        raise DomainError(
            "raster request exceeds the sample budget; increase h or lower "
            "samples_per_cell"
        )

    pts = spec.map.eval(_base_lattice(spec.base, int(math.ceil(n_samples))))
    umin, umax = float(pts.real.min()), float(pts.real.max())
    vmin, vmax = float(pts.imag.min()), float(pts.imag.max())
    origin = complex(umin - h, vmin - h)
    nx = int(math.ceil((umax - origin.real) / h)) + 2
    ny = int(math.ceil((vmax - origin.imag) / h)) + 2

    ix = np.floor((pts.real - origin.real) / h).astype(np.intp)
    iy = np.floor((pts.imag - origin.imag) / h).astype(np.intp)
    mask = np.zeros((ny, nx), dtype=bool)
    mask[iy, ix] = True

    mask = ndimage.binary_erosion(mask, border_value=0)

    slits = implied_slits(spec)
    if slits:
        cx = origin.real + (np.arange(nx) + 0.5) * h
        cy = origin.imag + (np.arange(ny) + 0.5) * h
        px, py = np.meshgrid(cx, cy)
        for a, b in slits:
            mask &= _segment_distance(px, py, a, b) > h

    if not mask.any():
        raise RasterError("rasterization produced an empty domain")
    return RasterGrid(h=h, origin=origin, nx=nx, ny=ny, inside=mask)


def indicator_grid(base: BaseDomain, h: float) -> RasterGrid:
    """Exact-indicator raster of a base domain (no map, no erosion).

    Meant for solver self-tests on domains whose spectrum is known.
    """
    if not (h > 0):
        raise DomainError("raster pitch h must be positive")
    if isinstance(base, Rectangle):
        origin = complex(base.x0, base.y0)
        nx = int(round(base.width / h))
        ny = int(round(base.height / h))
        cx = origin.real + (np.arange(nx) + 0.5) * h
        cy = origin.imag + (np.arange(ny) + 0.5) * h
        inside = np.ones((ny, nx), dtype=bool)
        inside &= (cx[None, :] > base.x0) & (cx[None, :] < base.x1)
        inside &= (cy[:, None] > base.y0) & (cy[:, None] < base.y1)
        return RasterGrid(h=h, origin=origin, nx=nx, ny=ny, inside=inside)
    if isinstance(base, Disc):
        r = base.radius
        origin = base.center - complex(r + h, r + h)
        n = int(math.ceil(2.0 * (r + h) / h)) + 1
        cx = origin.real + (np.arange(n) + 0.5) * h
        cy = origin.imag + (np.arange(n) + 0.5) * h
        dist = np.hypot(
            cx[None, :] - base.center.real, cy[:, None] - base.center.imag
        )
        return RasterGrid(h=h, origin=origin, nx=n, ny=n, inside=dist < r)
    raise DomainError(f"unsupported base domain {type(base).__name__}")


def full_grid(n_cells_x: int, n_cells_y: int, h: float) -> RasterGrid:
    """All-inside raster: n x m unknowns at pitch h.

    With m unknowns per axis the discrete first eigenvalue of the 5-point
    Laplacian is (2/h^2)(2 - 2 cos(pi/(m+1))) per axis, which makes this
    the reference grid for solver accuracy checks.
    """
    return RasterGrid(
        h=h,
        origin=0j,
        nx=n_cells_x,
        ny=n_cells_y,
        inside=np.ones((n_cells_y, n_cells_x), dtype=bool),
    )


def laplacian_matrix(grid: RasterGrid) -> sparse.csr_matrix:
    """5-point Dirichlet Laplacian on the inside cells, scaled by 1/h^2."""
    inside = grid.inside
    n = grid.n_inside
    index = np.full(inside.shape, -1, dtype=np.int64)
    index[inside] = np.arange(n)

    rows = [np.arange(n)]
    cols = [np.arange(n)]
    data = [np.full(n, 4.0)]
    # horizontal and vertical neighbor pairs, both orientations
    pair_h = inside[:, :-1] & inside[:, 1:]
    left, right = index[:, :-1][pair_h], index[:, 1:][pair_h]
    pair_v = inside[:-1, :] & inside[1:, :]
    lower, upper = index[:-1, :][pair_v], index[1:, :][pair_v]
    for a, b in ((left, right), (right, left), (lower, upper), (upper, lower)):
        rows.append(a)
        cols.append(b)
        data.append(np.full(len(a), -1.0))

    matrix = sparse.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    ).tocsr()
    matrix *= 1.0 / grid.h**2
    return matrix


def _residuals(matrix, values, vectors) -> float:
    worst = 0.0
    for i, lam in enumerate(values):
        vec = vectors[:, i]
        norm = float(np.linalg.norm(vec))
        res = float(np.linalg.norm(matrix @ vec - lam * vec)) / (abs(lam) * norm)
        worst = max(worst, res)
    return worst


def _solve_shift_invert(matrix, k, tol, max_matvec):
    n = matrix.shape[0]
    lu = splu(matrix.tocsc())
    count = 0

    def apply_inverse(x):
        nonlocal count
        count += 1
        if count > max_matvec:
            raise ConvergenceError("eigensolver exceeded its application budget")
        return lu.solve(x)

    op_inv = LinearOperator(matrix.shape, matvec=apply_inverse, dtype=float)
    v0 = np.full(n, 1.0 / math.sqrt(n))
    try:
        values, vectors = eigsh(
            matrix, k=k, sigma=0.0, which="LM", OPinv=op_inv, v0=v0, tol=0
        )
    except sparse.linalg.ArpackNoConvergence as exc:
        raise ConvergenceError(f"shift-invert Lanczos failed: {exc}") from exc
    order = np.argsort(values)
    return values[order], vectors[:, order], count


def _solve_lobpcg(matrix, k, tol, max_matvec):
    import pyamg

    n = matrix.shape[0]
    ml = pyamg.smoothed_aggregation_solver(matrix, max_coarse=500)
    preconditioner = ml.aspreconditioner(cycle="V")
    rng = np.random.default_rng(_LOBPCG_SEED)
    block = max(k + 1, 3)
    x = rng.standard_normal((n, block))
    total_iterations = 0
    values = None
    worst = math.inf
    # Rounds of warm-started LOBPCG; once an eigenvalue estimate exists it
    # converts the relative residual contract into an absolute tolerance.
    for _ in range(8):
        abs_tol = tol * float(values[0]) if values is not None else None
        values, vectors, history = lobpcg(
            matrix,
            x,
            M=preconditioner,
            tol=abs_tol,
            maxiter=150,
            largest=False,
            retLambdaHistory=True,
        )
        total_iterations += len(history)
        order = np.argsort(values)
        values, vectors = values[order], vectors[:, order]
        worst = _residuals(matrix, values[:k], vectors[:, :k])
        if worst <= tol:
            return values, vectors, total_iterations
        if total_iterations * block * 2 > max_matvec:
            break
        x = vectors
    raise ConvergenceError(
        f"LOBPCG residual {worst:.2e} above tolerance {tol:.2e}"
    )


def fd_eigenvalues(
    grid: RasterGrid, k: int = 1, tol: float = 1e-8, max_matvec: int = 100_000
) -> OracleResult:
    """Lowest k Dirichlet eigenvalues of the 5-point Laplacian on the grid.

    Contract: each returned pair satisfies ||A u - lam u|| / lam <= tol.
    Small problems go through shift-invert Lanczos on a sparse
    factorization; large ones through LOBPCG preconditioned with smoothed
    aggregation.  Both paths are deterministic and verify the residual
    contract explicitly, raising ``ConvergenceError`` otherwise.
    """
    if k < 1:
        raise DomainError("need k >= 1 eigenvalues")
    n = grid.n_inside
    if k >= n:
        raise DomainError("k must be smaller than the number of unknowns")
    matrix = laplacian_matrix(grid)
    if n <= DIRECT_SOLVER_LIMIT:
        values, vectors, iterations = _solve_shift_invert(matrix, k, tol, max_matvec)
    else:
        values, vectors, iterations = _solve_lobpcg(matrix, k, tol, max_matvec)
    values = values[:k]
    vectors = vectors[:, :k]
    worst = _residuals(matrix, values, vectors)
    if worst > tol:
        raise ConvergenceError(
            f"residual {worst:.2e} exceeds the {tol:.2e} contract"
        )
    return OracleResult(
        eigenvalues=tuple(float(v) for v in values),
        h=grid.h,
        iterations=iterations,
        residual=worst,
    )


def validate(
    spec: DomainSpec,
    bounds: Sequence[BoundResult],
    h: float,
    samples_per_cell: int = 4,
    tol: float = 1e-6,
) -> ValidationReport:
    """Check bounds against Richardson-extrapolated FD eigenvalues.

    Runs the solver on rasters at pitch h and h/2 (k = 2 when a gap-type
    bound is present), extrapolates assuming second order, and accepts a
    lambda1 bound when it does not exceed the extrapolated value by more
    than the grid error band.  Vacuous (nonpositive) gap bounds pass
    trivially.
    """
    need_gap = any(b.method not in LAMBDA1_METHODS for b in bounds)
    k = 2 if need_gap else 1

    coarse = fd_eigenvalues(rasterize(spec, h, samples_per_cell), k=k, tol=tol)
    fine = fd_eigenvalues(rasterize(spec, h / 2.0, samples_per_cell), k=k, tol=tol)
    lam1_c, lam1_f = coarse.eigenvalues[0], fine.eigenvalues[0]
    lam1_ext = lam1_f + (lam1_f - lam1_c) / 3.0
    band = (4.0 / 3.0) * abs(lam1_f - lam1_c) / lam1_ext + 5e-3

    gap_ext = None
    if need_gap:
        gap_c = coarse.eigenvalues[1] - lam1_c
        gap_f = fine.eigenvalues[1] - lam1_f
        gap_ext = gap_f + (gap_f - gap_c) / 3.0

    rows = []
    for bound in bounds:
        if bound.method in LAMBDA1_METHODS:
            reference = lam1_ext
        else:
            reference = gap_ext
        tightness = bound.value / reference if reference else math.inf
        passed = bound.value <= reference * (1.0 + band) or bound.value <= 0.0
        rows.append(
            ValidationRow(
                method=bound.method.value,
                bound_value=bound.value,
                reference=reference,
                tightness=tightness,
                passed=bool(passed),
            )
        )
    return ValidationReport(
        rows=tuple(rows),
        h=h,
        lambda1_coarse=lam1_c,
        lambda1_fine=lam1_f,
        lambda1_extrapolated=lam1_ext,
        rel_band=band,
        gap_extrapolated=gap_ext,
    )


def _inscribed_disc(map: AnalyticMap, base: BaseDomain) -> tuple[complex, float]:
    """A disc contained in the image, as large as is convenient.

    Closed forms cover the stock pairings; anything else falls back to a
    raster distance transform with a safety margin.
    """
    if isinstance(map, Identity):
        if isinstance(base, Disc):
            return base.center, base.radius
        return base.center, 0.5 * min(base.width, base.height)
    if isinstance(map, Affine):
        if isinstance(base, Disc):
            return map.a * base.center + map.b, abs(map.a) * base.radius
        return (
            map.a * base.center + map.b,
            abs(map.a) * 0.5 * min(base.width, base.height),
        )
    if isinstance(map, Exp) and isinstance(base, Rectangle):
        r_in, r_out = math.exp(base.x0), math.exp(base.x1)
        radius = 0.5 * (r_out - r_in)
        mid = 0.5 * (r_in + r_out)
        half_angle = math.asin(min(radius / mid, 1.0))
        lo, hi = base.y0, base.y1
        center_angle = 0.5 * (lo + hi)
        if hi - lo >= 2.0 * half_angle:
            return mid * complex(
                math.cos(center_angle), math.sin(center_angle)
            ), radius

    spec = DomainSpec(base=base, map=map)
    grid = rasterize(spec, h=0.01)
    dist = ndimage.distance_transform_edt(grid.inside, sampling=grid.h)
    iy, ix = np.unravel_index(np.argmax(dist), dist.shape)
    center = grid.origin + (ix + 0.5) * grid.h + 1j * (iy + 0.5) * grid.h
    return center, float(dist[iy, ix]) - 2.0 * grid.h


def _bump_gradient_sq(w: np.ndarray, center: complex, radius: float) -> np.ndarray:
    """|grad f|^2 for the standard bump f = exp(1 - 1/(1 - s)),
    s = |w - center|^2 / radius^2, extended by zero outside."""
    rho_sq = np.abs(w - center) ** 2
    s = rho_sq / radius**2
    out = np.zeros(s.shape, dtype=float)
    ok = s < 1.0 - 1e-9
    s_ok = s[ok]
    one_minus = 1.0 - s_ok
    out[ok] = (
        np.exp(2.0 - 2.0 / one_minus)
        * 4.0
        * rho_sq[ok]
        / (radius**4 * one_minus**4)
    )
    return out


def energy_isometry_check(
    map: AnalyticMap, base: BaseDomain, quad: Optional[QuadratureConfig] = None
) -> float:
    """Relative defect of the conformal energy identity on a bump.

    Integrates |grad f|^2 over an inscribed disc of the image and
    |grad (f o phi)|^2 = |grad f(phi(z))|^2 |phi'(z)|^2 over the base,
    with independent quadratures, and returns |base - image| / image.
    Internally refines the supplied configuration, since the bump decays
    to zero with all derivatives and needs extra radial resolution.
    """
    cfg = quad or QuadratureConfig()
    center, radius = _inscribed_disc(map, base)
    if not (radius > 0):
        raise DomainError("could not find an inscribed disc in the image")

    image_cfg = QuadratureConfig(
        nodes_per_axis=cfg.nodes_per_axis,
        panels_per_axis=cfg.panels_per_axis,
        disc_radial_nodes=3 * cfg.disc_radial_nodes,
        disc_angular_nodes=2 * cfg.disc_angular_nodes,
    )
    z_img, w_img = _disc_rule(Disc(center, radius), image_cfg, 0)
    image_side = float(np.sum(_bump_gradient_sq(z_img, center, radius) * w_img))

    base_cfg = QuadratureConfig(
        nodes_per_axis=cfg.nodes_per_axis + 4,
        panels_per_axis=3 * cfg.panels_per_axis,
        disc_radial_nodes=3 * cfg.disc_radial_nodes,
        disc_angular_nodes=2 * cfg.disc_angular_nodes,
    )
    if isinstance(base, Rectangle):
        z_base, w_base = _rect_rule(base, base_cfg, 0)
    else:
        z_base, w_base = _disc_rule(base, base_cfg, 0)
    mapped = map.eval(z_base)
    integrand = _bump_gradient_sq(mapped, center, radius) * np.abs(
        map.deriv(z_base)
    ) ** 2
    base_side = float(np.sum(integrand * w_base))

    return abs(base_side - image_side) / image_side
