"""Discrete optimal transport between weighted point clouds.

transport_solve is an exact transportation simplex (u/v potentials,
northwest-corner start, Bland-style lexicographic pivoting so degenerate
instances cannot cycle). sinkhorn_solve is the entropic approximation for
large clouds. Both return a TransportPlan whose flow matrix has the
supply/demand marginals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonFiniteCost, UnbalancedMass

_BALANCE_RTOL = 1e-9


@dataclass(frozen=True)
class TransportPlan:
    flow: np.ndarray
    cost: float


def _validate(cost, supply, demand):
    c = np.asarray(cost, dtype=float)
    s = np.asarray(supply, dtype=float)
    d = np.asarray(demand, dtype=float)
    if c.ndim != 2 or c.shape != (s.size, d.size):
        raise DomainError(
            f"cost shape {c.shape} does not match supply/demand sizes {s.size}x{d.size}"
        )
    if not np.all(np.isfinite(c)) or np.any(c < 0):
        raise NonFiniteCost("cost entries must be finite and nonnegative")
    if not np.all(np.isfinite(s)) or not np.all(np.isfinite(d)):
        raise DomainError("supply and demand must be finite")
    if np.any(s < 0) or np.any(d < 0):
        raise DomainError("supply and demand must be nonnegative")
    ts, td = float(s.sum()), float(d.sum())
    if abs(ts - td) > _BALANCE_RTOL * max(ts, td, 1.0):
        raise UnbalancedMass(f"total supply {ts} != total demand {td}")
    return c, s, d, ts, td


def _northwest_corner(s, d):
    """Initial basic feasible solution: m+n-1 basis cells on a staircase."""
    m, n = s.size, d.size
    flow = np.zeros((m, n))
    basis: list[tuple[int, int]] = []
    s = s.copy()
    d = d.copy()
    i = j = 0
    while True:
        basis.append((i, j))
        q = min(s[i], d[j])
        flow[i, j] = q
        s[i] -= q
        d[j] -= q
        if i == m - 1 and j == n - 1:
            break
        if s[i] == 0.0 and i < m - 1:
            i += 1
        elif j < n - 1:
            j += 1
        else:
            i += 1
    return flow, basis


def _potentials(c, basis, m, n):
    """Solve u_i + v_j = c_ij over the basis spanning tree."""
    row_cells: list[list[int]] = [[] for _ in range(m)]
    col_cells: list[list[int]] = [[] for _ in range(n)]
    for i, j in basis:
        row_cells[i].append(j)
        col_cells[j].append(i)
    u = np.full(m, np.nan)
    v = np.full(n, np.nan)
    u[0] = 0.0
    stack = [("r", 0)]
    while stack:
        kind, k = stack.pop()
        if kind == "r":
            for j in row_cells[k]:
                if np.isnan(v[j]):
                    v[j] = c[k, j] - u[k]
                    stack.append(("c", j))
        else:
            for i in col_cells[k]:
                if np.isnan(u[i]):
                    u[i] = c[i, k] - v[k]
                    stack.append(("r", i))
    return u, v


def _cycle(basis, enter, m, n):
    """The unique cycle created by adding `enter` to the basis tree,
    returned as an ordered cell list starting at `enter`."""
    adj: dict[int, list[tuple[int, tuple[int, int]]]] = {}
    for i, j in basis:
        a, b = i, m + j
        adj.setdefault(a, []).append((b, (i, j)))
        adj.setdefault(b, []).append((a, (i, j)))
    start, goal = enter[0], m + enter[1]
    parent: dict[int, tuple[int, tuple[int, int]]] = {start: (-1, (-1, -1))}
    stack = [start]
    while stack:
        node = stack.pop()
        if node == goal:
            break
        for nxt, cell in adj.get(node, ()):
            if nxt not in parent:
                parent[nxt] = (node, cell)
                stack.append(nxt)
    path_cells = []
    node = goal
    while node != start:
        prev, cell = parent[node]
        path_cells.append(cell)
        node = prev
    # enter shares column goal with path_cells[0]; signs alternate from +.
    return [enter] + path_cells


def _simplex(c, s, d):
    m, n = s.size, d.size
    flow, basis = _northwest_corner(s, d)
    tol = 1e-10 * max(1.0, float(np.max(c)) if c.size else 1.0)
    max_pivots = 50 * (m + n) * max(m, n) + 1000
    # Dantzig entering converges fast; after too many degenerate pivots in a
    # row, fall back to Bland's rule, which provably cannot cycle.
    degenerate_run = 0
    bland = False
    for _ in range(max_pivots):
        u, v = _potentials(c, basis, m, n)
        rc = c - u[:, None] - v[None, :]
        for i, j in basis:
            rc[i, j] = 0.0
        if bland:
            neg = np.argwhere(rc < -tol)
            if neg.size == 0:
                break
            enter = (int(neg[0][0]), int(neg[0][1]))
        else:
            flat = int(np.argmin(rc))
            enter = (flat // n, flat % n)
            if rc[enter] >= -tol:
                break
        cycle = _cycle(basis, enter, m, n)
        minus = cycle[1::2]
        theta_idx = min(range(len(minus)), key=lambda k: (flow[minus[k]], minus[k]))
        leave = minus[theta_idx]
        theta = flow[leave]
        if theta <= tol:
            degenerate_run += 1
            if degenerate_run > 10 * (m + n):
                bland = True
        else:
            degenerate_run = 0
        for k, cell in enumerate(cycle):
            if k % 2 == 0:
                flow[cell] += theta
            else:
                flow[cell] = max(0.0, flow[cell] - theta)
        flow[leave] = 0.0
        basis = [cell for cell in basis if cell != leave] + [enter]
    else:
        raise RuntimeError("transportation simplex failed to converge")
    return flow


def transport_solve(cost, supply, demand) -> TransportPlan:
    """Exact minimum-cost transport plan.

    Supply and demand must balance within 1e-9 relative; residual float
    drift is absorbed by rescaling demand. Zero-mass points are carried
    through with zero flow.
    """
    c, s, d, ts, td = _validate(cost, supply, demand)
    flow = np.zeros_like(c)
    if ts > 0.0:
        d = d * (ts / td)
        rows = np.flatnonzero(s > 0.0)
        cols = np.flatnonzero(d > 0.0)
        sub = _simplex(c[np.ix_(rows, cols)], s[rows], d[cols])
        flow[np.ix_(rows, cols)] = sub
    return TransportPlan(flow=flow, cost=float(np.sum(flow * c)))


def _logsumexp(x, axis):
    hi = np.max(x, axis=axis, keepdims=True)
    hi = np.where(np.isfinite(hi), hi, 0.0)
    return np.squeeze(hi, axis=axis) + np.log(
        np.sum(np.exp(x - hi), axis=axis)
    )


def sinkhorn_solve(
    cost, supply, demand, epsilon: float = 0.01, max_iter: int = 1000
) -> TransportPlan:
    """Entropic-regularized approximation (log-domain iterations).

    Marginals converge to supply/demand only approximately; intended for
    clouds too large for the exact simplex.
    """
    c, s, d, ts, td = _validate(cost, supply, demand)
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    flow = np.zeros_like(c)
    if ts > 0.0:
        d = d * (ts / td)
        rows = np.flatnonzero(s > 0.0)
        cols = np.flatnonzero(d > 0.0)
        cs = c[np.ix_(rows, cols)]
        log_s = np.log(s[rows])
        log_d = np.log(d[cols])
        f = np.zeros(rows.size)
        g = np.zeros(cols.size)
        for _ in range(max_iter):
            f = epsilon * (log_s - _logsumexp((g[None, :] - cs) / epsilon, axis=1))
            g = epsilon * (log_d - _logsumexp((f[:, None] - cs) / epsilon, axis=0))
        flow[np.ix_(rows, cols)] = np.exp((f[:, None] + g[None, :] - cs) / epsilon)
    return TransportPlan(flow=flow, cost=float(np.sum(flow * c)))
