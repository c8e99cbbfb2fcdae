"""Dense two-phase primal simplex with Bland's rule.

Maximizes c.x over {x >= 0 : rows}, where each row is (coefficients,
relation, bound) with relation one of "<=", "=", ">=". Equalities are
split into opposing inequalities and exact duplicate rows are dropped, so
the solver core only ever sees rows of the form a.x <= b. Bland's rule
keeps the pivoting cycle-free and deterministic; identical inputs produce
bit-identical outputs. The solver is meant for small dense problems and
fails loudly (SolverError) instead of limping through numerical trouble.

An optional exact mode re-checks the returned basis in rational
arithmetic: it re-solves the basis system, re-verifies every constraint
and every reduced cost with Fractions, and reports the exact objective.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import SolverError, ValidationError

__all__ = [
    "FEASIBILITY_EPS",
    "COMPARISON_EPS",
    "LinearProgram",
    "LpOutcome",
    "normalized_rows",
    "solve_lp",
]

FEASIBILITY_EPS = 1e-9   # per-row feasibility slack, scaled by the row max-norm
COMPARISON_EPS = 1e-6    # tolerance for comparing objective values externally
_PIVOT_EPS = 1e-9
_PIVOT_FLOOR = 1e-11
_RELATIONS = ("<=", "=", ">=")


class LinearProgram:
    """maximize objective . x subject to rows, all variables nonnegative."""

    def __init__(self, objective, rows: Iterable[tuple[Sequence[float], str, float]]):
        self.objective = np.asarray(objective, dtype=float)
        if self.objective.ndim != 1 or self.objective.size == 0:
            raise ValidationError("objective must be a nonempty vector")
        if not np.all(np.isfinite(self.objective)):
            raise ValidationError("objective has non-finite entries")
        packed = []
        for coeffs, relation, bound in rows:
            a = np.asarray(coeffs, dtype=float)
            if a.shape != self.objective.shape:
                raise ValidationError(
                    f"row length {a.size} does not match {self.objective.size} variables"
                )
            if relation not in _RELATIONS:
                raise ValidationError(f"unknown relation {relation!r}")
            b = float(bound)
            if not (np.all(np.isfinite(a)) and np.isfinite(b)):
                raise ValidationError("constraint has non-finite entries")
            packed.append((a, relation, b))
        self.rows = tuple(packed)

    @property
    def num_vars(self) -> int:
        return int(self.objective.size)


@dataclass(frozen=True, eq=False)
class LpOutcome:
    """Solver result: status is "optimal", "infeasible", or "unbounded".

    ``x``, ``value`` and ``dual`` are set only for optimal outcomes; the
    dual vector is aligned with the normalized (all "<=") rows and may be
    None when the tableau degenerated. ``exact_value`` carries the
    rational objective when the exact re-check ran.
    """

    status: str
    value: float | None = None
    x: np.ndarray | None = None
    dual: np.ndarray | None = None
    exact_value: Fraction | None = None


def normalized_rows(p: LinearProgram) -> tuple[np.ndarray, np.ndarray]:
    """All constraints as a.x <= b: equalities split, exact duplicates dropped."""
    rows: list[tuple[np.ndarray, float]] = []
    for a, relation, b in p.rows:
        if relation in ("<=", "="):
            rows.append((a.copy(), b))
        if relation in (">=", "="):
            rows.append((-a, -b))
    seen = set()
    A, rhs = [], []
    for a, b in rows:
        key = (a.tobytes(), b)
        if key in seen:
            continue
        seen.add(key)
        A.append(a)
        rhs.append(b)
    mat = np.array(A, dtype=float).reshape(len(A), p.num_vars)
    return mat, np.array(rhs, dtype=float)


class _Simplex:
    """Tableau state for one solve over normalized rows."""

    def __init__(self, objective: np.ndarray, A: np.ndarray, b: np.ndarray):
        self.n = int(objective.size)
        m = A.shape[0]
        self.slack_cols = m
        # rows with negative bounds start infeasible and get an artificial
        sigma = np.where(b < 0, -1.0, 1.0)
        self.art_rows = np.flatnonzero(b < 0)
        n_art = int(self.art_rows.size)
        self.ncols = self.n + m + n_art
        T = np.zeros((m, self.ncols + 1))
        T[:, : self.n] = A * sigma[:, None]
        T[:, self.n : self.n + m] = np.diag(sigma)
        for k, r in enumerate(self.art_rows):
            T[r, self.n + m + k] = 1.0
        T[:, -1] = b * sigma
        self.T = T
        self.basis = list(range(self.n, self.n + m))
        for k, r in enumerate(self.art_rows):
            self.basis[r] = self.n + m + k
        self.kept_rows = list(range(m))
        self.objective = objective

    @property
    def m(self) -> int:
        return self.T.shape[0]

    def phase1_cost(self) -> np.ndarray:
        cost = np.zeros(self.ncols)
        cost[self.n + self.slack_cols :] = -1.0
        return cost

    def phase2_cost(self) -> np.ndarray:
        cost = np.zeros(self.ncols)
        cost[: self.n] = self.objective
        return cost

    def artificial_sum(self) -> float:
        first_art = self.n + self.slack_cols
        return float(
            sum(self.T[i, -1] for i in range(self.m) if self.basis[i] >= first_art)
        )

    def _pivot(self, row: int, col: int) -> None:
        piv = self.T[row, col]
        if abs(piv) < _PIVOT_FLOOR:
            raise SolverError("pivot magnitude below the tolerance floor")
        self.T[row] /= piv
        colvals = self.T[:, col].copy()
        colvals[row] = 0.0
        self.T -= np.outer(colvals, self.T[row])
        self.T[:, col] = 0.0
        self.T[row, col] = 1.0
        self.basis[row] = col

    def run_phase(self, cost: np.ndarray, allowed: int) -> str:
        limit = 5000 + 200 * (self.m + self.ncols)
        for _ in range(limit):
            basis = np.asarray(self.basis)
            reduced = cost[:allowed] - cost[basis] @ self.T[:, :allowed]
            improving = np.flatnonzero(reduced > _PIVOT_EPS)
            if improving.size == 0:
                return "optimal"
            enter = int(improving[0])  # Bland: lowest eligible variable index
            col = self.T[:, enter]
            rows = np.flatnonzero(col > _PIVOT_EPS)
            if rows.size == 0:
                return "unbounded"
            ratios = np.maximum(self.T[rows, -1], 0.0) / col[rows]
            best = ratios.min()
            tied = rows[ratios <= best * (1 + 1e-12) + 1e-12]
            leave = int(min(tied, key=lambda i: self.basis[i]))  # Bland again
            self._pivot(leave, enter)
        raise SolverError("simplex iteration limit exceeded")

    def drive_out_artificials(self) -> None:
        """After a feasible phase 1, remove artificials from the basis.

        A basic artificial sits at value zero; pivot it onto any usable
        column, or drop its row entirely when the row has become all-zero
        (a redundant constraint).
        """
        first_art = self.n + self.slack_cols
        drop = []
        for i in range(self.m):
            if self.basis[i] < first_art:
                continue
            row = self.T[i, :first_art]
            usable = np.flatnonzero(np.abs(row) > _PIVOT_EPS)
            if usable.size:
                self._pivot(i, int(usable[0]))
            else:
                drop.append(i)
        if drop:
            keep = [i for i in range(self.m) if i not in drop]
            self.T = self.T[keep]
            self.basis = [self.basis[i] for i in keep]
            self.kept_rows = [self.kept_rows[i] for i in keep]

    def solution(self) -> np.ndarray:
        xfull = np.zeros(self.ncols)
        xfull[np.asarray(self.basis)] = self.T[:, -1]
        x = xfull[: self.n].copy()
        x[(x < 0) & (x > -10 * _PIVOT_EPS)] = 0.0
        return x

    def dual(self, cost: np.ndarray) -> np.ndarray | None:
        if self.kept_rows != list(range(self.slack_cols)):
            return None  # rows were dropped; skip the dual certificate
        basis = np.asarray(self.basis)
        reduced = cost[: self.n + self.slack_cols] - cost[basis] @ self.T[
            :, : self.n + self.slack_cols
        ]
        return -reduced[self.n :]

    def dump(self, stream=sys.stderr) -> None:
        header = (
            [f"x{j}" for j in range(self.n)]
            + [f"s{j}" for j in range(self.slack_cols)]
            + [f"t{j}" for j in range(self.ncols - self.n - self.slack_cols)]
            + ["rhs"]
        )
        print("\t".join(header), file=stream)
        for i in range(self.m):
            row = "\t".join(f"{v:.6g}" for v in self.T[i])
            print(f"{row}\tbasis={self.basis[i]}", file=stream)


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    k = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        aug[col] = [v / inv for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][k] for r in range(k)]


def _exact_certificate(
    objective: np.ndarray,
    A: np.ndarray,
    b: np.ndarray,
    kept: list[int],
    basis: list[int],
) -> Fraction:
    """Re-check the final basis with rational arithmetic.

    Solves the basis system over the kept rows, confirms every original
    row and sign condition exactly, confirms no reduced cost is positive,
    and returns the exact objective value. Any failure raises SolverError
    rather than returning a doubtful value.
    """
    n = int(objective.size)
    m = A.shape[0]
    cF = [Fraction(float(v)) for v in objective]
    AF = [[Fraction(float(v)) for v in row] for row in A]
    bF = [Fraction(float(v)) for v in b]
    mk = len(kept)

    def column(j: int) -> list[Fraction]:
        if j < n:
            return [AF[i][j] for i in kept]
        return [Fraction(1) if r == j - n else Fraction(0) for r in kept]

    cols = [column(j) for j in basis]
    Bmat = [[cols[c][r] for c in range(mk)] for r in range(mk)]
    z = _solve_exact(Bmat, [bF[i] for i in kept])
    if z is None:
        raise SolverError("exact verification failed: singular basis")
    if any(v < 0 for v in z):
        raise SolverError("exact verification failed: negative basic variable")
    xF = [Fraction(0)] * n
    for pos, j in enumerate(basis):
        if j < n:
            xF[j] = z[pos]
    for i in range(m):
        lhs = sum(AF[i][j] * xF[j] for j in range(n))
        if lhs > bF[i]:
            raise SolverError("exact verification failed: constraint violated")
    cB = [cF[j] if j < n else Fraction(0) for j in basis]
    Bt = [[Bmat[r][c] for r in range(mk)] for c in range(mk)]
    w = _solve_exact(Bt, cB)
    if w is None:
        raise SolverError("exact verification failed: singular basis transpose")
    for j in range(n + m):
        cj = cF[j] if j < n else Fraction(0)
        col = column(j)
        r = cj - sum(w[i] * col[i] for i in range(mk))
        if r > 0:
            raise SolverError("exact verification failed: positive reduced cost")
    return sum(cB[i] * z[i] for i in range(mk))


def solve_lp(p: LinearProgram, exact_check: bool = False, debug: bool = False) -> LpOutcome:
    """Solve a linear program; see the module docstring for conventions."""
    A, b = normalized_rows(p)
    n = p.num_vars
    if A.shape[0] == 0:
        # only the sign constraints remain
        if np.any(p.objective > _PIVOT_EPS):
            return LpOutcome("unbounded")
        exact = Fraction(0) if exact_check else None
        return LpOutcome("optimal", 0.0, np.zeros(n), np.zeros(0), exact)

    sx = _Simplex(p.objective, A, b)
    if sx.art_rows.size:
        status = sx.run_phase(sx.phase1_cost(), sx.ncols)
        if status != "optimal":
            raise SolverError(f"phase 1 ended {status}")
        if sx.artificial_sum() > 1e-7 * max(1.0, float(np.abs(b).max())):
            return LpOutcome("infeasible")
        sx.drive_out_artificials()

    cost2 = sx.phase2_cost()
    status = sx.run_phase(cost2, sx.n + sx.slack_cols)
    if debug:
        sx.dump()
    if status == "unbounded":
        return LpOutcome("unbounded")
    x = sx.solution()
    value = float(p.objective @ x)
    dual = sx.dual(cost2)
    exact = None
    if exact_check:
        exact = _exact_certificate(p.objective, A, b, sx.kept_rows, sx.basis)
    return LpOutcome("optimal", value, x, dual, exact)
