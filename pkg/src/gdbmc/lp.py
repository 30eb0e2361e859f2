"""Dense tableau simplex solver with Bland's anti-cycling rule.

Standard symmetric form: maximize c.x subject to A x <= b, x >= 0 with
b >= 0, so the slack basis is feasible and no phase 1 is needed.
Minimization problems (min c.x, A x >= b, x >= 0 with c >= 0) are solved
through their dual; the primal minimizer is read off the final tableau's
reduced costs.
"""

from dataclasses import dataclass

import numpy as np

_PIVOT_TOL = 1e-9


@dataclass
class SimplexProblem:
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    sense: str = "max"        # "max" with <= rows, or "min" with >= rows

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        self.A = np.atleast_2d(np.asarray(self.A, dtype=float))
        self.b = np.asarray(self.b, dtype=float)
        m, n = self.A.shape
        if self.c.shape != (n,) or self.b.shape != (m,):
            raise ValueError("inconsistent LP dimensions")
        if not (np.isfinite(self.c).all() and np.isfinite(self.A).all()
                and np.isfinite(self.b).all()):
            raise ValueError("LP data must be finite")
        if self.sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min'")


@dataclass
class SimplexOutcome:
    status: str               # "optimal" | "unbounded" | "infeasible"
    x: np.ndarray = None      # primal solution
    y: np.ndarray = None      # dual solution
    objective: float = None


def _tableau_simplex(c, A, b, track_bases=False):
    """Core tableau iteration for max c.x, A x <= b (b >= 0), x >= 0.

    Returns (status, x, y, objective).  With track_bases=True every visited
    basis is hashed and a repeat raises, which certifies Bland's rule.
    """
    m, n = A.shape
    if (b < 0).any():
        raise ValueError("standard-form solver requires b >= 0")
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, :n] = -c
    basis = list(range(n, n + m))
    seen = set()

    while True:
        if track_bases:
            key = frozenset(basis)
            if key in seen:
                raise AssertionError("basis repeated under Bland's rule")
            seen.add(key)
        # Bland: entering variable is the smallest index with a negative
        # reduced cost
        enter = -1
        for j in range(n + m):
            if T[-1, j] < -_PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            break
        col = T[:m, enter]
        rows = np.where(col > _PIVOT_TOL)[0]
        if rows.size == 0:
            return "unbounded", None, None, None
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        # tie-break on the smallest leaving basis variable index
        candidates = [rows[k] for k in range(rows.size) if ratios[k] <= best + _PIVOT_TOL]
        leave = min(candidates, key=lambda i: basis[i])
        piv = T[leave, enter]
        T[leave] /= piv
        for i in range(m + 1):
            if i != leave and T[i, enter] != 0.0:
                T[i] -= T[i, enter] * T[leave]
        basis[leave] = enter

    x = np.zeros(n)
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = T[i, -1]
    y = T[-1, n:n + m].copy()
    return "optimal", x, y, float(T[-1, -1])


def solve(problem, track_bases=False):
    """Solve a SimplexProblem.

    For sense "min" (rows >=) the dual max problem is solved and the primal
    minimizer is recovered from the final tableau; dual unboundedness is
    reported as primal infeasibility.
    """
    if problem.sense == "max":
        status, x, y, obj = _tableau_simplex(problem.c, problem.A, problem.b,
                                             track_bases=track_bases)
        return SimplexOutcome(status=status, x=x, y=y, objective=obj)

    # min c.x, A x >= b, x >= 0  <->  dual: max b.y, A^T y <= c, y >= 0
    if (problem.c < 0).any():
        raise ValueError("min-form solver requires c >= 0 (slack-basis "
                         "feasible dual)")
    status, y, x, obj = _tableau_simplex(problem.b, problem.A.T, problem.c,
                                         track_bases=track_bases)
    if status == "unbounded":
        return SimplexOutcome(status="infeasible")
    return SimplexOutcome(status=status, x=x, y=y, objective=obj)


def realize_via_dual(A, epsilon, track_bases=False):
    """Minimize z_1 + ... + z_m subject to A z >= epsilon, z >= 0.

    Solved through the dual (maximize epsilon * sum(t) with A^T t <= 1,
    t >= 0), which always has t = 0 feasible; the minimizer z is read from
    the final tableau's reduced costs.  Returns a SimplexOutcome whose x is
    z; infeasibility of the min problem surfaces as dual unboundedness.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    k, m = A.shape
    problem = SimplexProblem(c=np.ones(m), A=A,
                             b=np.full(k, float(epsilon)), sense="min")
    out = solve(problem, track_bases=track_bases)
    if out.status == "optimal":
        resid = A @ out.x - epsilon
        if resid.min() < -1e-8:
            raise AssertionError(
                f"simplex recovery violated a constraint by {-resid.min():.3e}")
    return out
