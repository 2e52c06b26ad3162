"""Random instance generators for solver tests."""
from __future__ import annotations

import math

import numpy as np

from h2supply.model import InstanceBuilder


def make_instance(c, A, sense, rhs, lb, ub, integer=None, c0=0.0):
    b = InstanceBuilder()
    n = len(c)
    integer = np.zeros(n, bool) if integer is None else integer
    for j in range(n):
        b.var("x", (j,), float(lb[j]), float(ub[j]), bool(integer[j]))
    for i, row in enumerate(np.atleast_2d(A)):
        b.row(enumerate(row), sense[i], float(rhs[i]), f"r{i}")
    b.objective = "test"
    b.c = np.asarray(c, float)
    b.c0 = c0
    return b.freeze()


def random_lp(rng, n=None, m=None, integer_share=0.0):
    """Random LP/MILP that is sometimes infeasible or unbounded.

    Rows are built around a random point ``x0`` with a mix of senses; a few
    instances get a contradictory pair of rows or an improving free ray."""
    n = n or int(rng.integers(2, 9))
    m = m or int(rng.integers(1, 8))
    A = np.round(rng.normal(size=(m, n)) * (rng.random((m, n)) < 0.7), 3)
    lb = np.where(rng.random(n) < 0.2, -math.inf, np.round(rng.uniform(-5, 0, n), 2))
    ub = np.where(rng.random(n) < 0.3, math.inf, np.round(rng.uniform(1, 10, n), 2))
    x0 = np.where(np.isfinite(lb), lb, -3.0) + rng.uniform(0, 1, n)
    x0 = np.minimum(x0, np.where(np.isfinite(ub), ub, x0))
    integer = rng.random(n) < integer_share
    x0 = np.where(integer, np.ceil(x0), x0)
    x0 = np.minimum(x0, ub)
    act = A @ x0
    sense = rng.choice(np.array(["L", "G", "E"]), m, p=[0.45, 0.35, 0.2])
    slack = rng.uniform(0, 2, m)
    rhs = np.round(np.where(sense == "L", act + slack, np.where(sense == "G", act - slack, act)), 6)
    # equality rows rounded away from x0 are still fine for the comparison
    c = np.round(rng.normal(size=n), 3)
    kind = rng.random()
    if kind < 0.1 and m >= 1:
        A = np.vstack([A, A[0]])
        sense = np.append(sense, "L" if sense[0] == "G" else "G")
        rhs = np.append(rhs, rhs[0] - 5.0 if sense[-1] == "L" else rhs[0] + 5.0)
        if sense[0] == "E":
            sense[-1], rhs[-1] = "G", rhs[0] + 5.0
    elif kind > 0.85 and n >= 1:
        j = int(rng.integers(n))
        ub[j] = math.inf
        c[j] = -abs(c[j]) - 0.5
        A[:, j] = 0.0
    keep = np.any(A != 0.0, axis=1)  # empty rows carry no information
    return make_instance(c, A[keep], sense[keep], rhs[keep], lb, ub, integer)


def random_milp(rng, n_int=3, n_cont=2, m=3, top=3):
    """Small bounded MILP with integer domains 0..top; may be infeasible."""
    n = n_int + n_cont
    A = np.round(rng.uniform(-3, 3, (m, n)) * (rng.random((m, n)) < 0.8), 2)
    A[np.arange(m), rng.integers(0, n, m)] += 1.0  # no empty rows
    lb = np.zeros(n)
    ub = np.concatenate([np.full(n_int, float(top)), np.round(rng.uniform(1, 5, n_cont), 2)])
    integer = np.arange(n) < n_int
    x0 = np.where(integer, rng.integers(0, top + 1, n), rng.uniform(0, 1, n) * ub)
    act = A @ x0
    sense = rng.choice(np.array(["L", "G", "E"]), m, p=[0.5, 0.4, 0.1])
    shift = rng.uniform(-1.0, 2.0, m)  # negative shifts may cut x0 off
    rhs = np.round(np.where(sense == "L", act + shift, np.where(sense == "G", act - shift, act)), 4)
    c = np.round(rng.normal(size=n), 3)
    return make_instance(c, A, sense, rhs, lb, ub, integer)
