"""One-dimensional optimal-system machinery for the five-generator
algebra: two central generators plus a rotation triple.

Reduction schedule: rotate with the third generator to clear the fourth
coefficient, rotate with the fourth generator to clear the third, then
scale the leading surviving coefficient to one.  Rotation parameters
follow atan2 semantics; when the rotation hypotenuse is rational the
move is performed exactly, otherwise in floating point against a 1e-9
match tolerance.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import LieSymError
from .liealg import LieAlgebra, adjoint_exp
from .symexpr import Add, Mul, Num, Sym, is_zero, substitute, to_canonical

MATCH_TOL = 1e-9


class OptimalSystemError(LieSymError):
    pass


@dataclass(frozen=True)
class OptimalRep:
    """Representative pattern: fixed entries are rationals, free slots
    are parameter names like 'a2'."""

    case_id: int
    pattern: tuple  # entries: Fraction | str

    def free_slots(self):
        return [i for i, p in enumerate(self.pattern) if isinstance(p, str)]

    def describe(self, names):
        parts = []
        for i, p in enumerate(self.pattern):
            if isinstance(p, str):
                parts.append(f"{p}*{names[i]}")
            elif p == 1:
                parts.append(names[i])
            elif p != 0:
                parts.append(f"{p}*{names[i]}")
        return " + ".join(parts) if parts else "0"


def default_representatives() -> list:
    """The nine one-dimensional representatives for the 5-generator
    algebra (identity, time shift, rotation triple), ordered by case."""
    z = Fraction(0)
    one = Fraction(1)
    return [
        OptimalRep(1, (one, "a2", z, z, "a5")),
        OptimalRep(2, (one, "a2", "a3", z, z)),
        OptimalRep(3, (one, "a2", z, "a4", z)),
        OptimalRep(4, (z, one, z, z, "a5")),
        OptimalRep(5, (z, one, "a3", z, z)),
        OptimalRep(6, (z, one, z, "a4", z)),
        OptimalRep(7, (z, z, one, z, z)),
        OptimalRep(8, (z, z, z, one, z)),
        OptimalRep(9, (z, z, z, z, one)),
    ]


@dataclass
class Move:
    """One adjoint move: generator index, rotation parameter, and the
    exact (cos, sin) pair when the parameter is exactly representable."""

    generator: int
    parameter: float
    exact_cos_sin: tuple | None = None

    def as_dict(self):
        out = {"generator": self.generator + 1, "parameter": self.parameter}
        if self.exact_cos_sin is not None:
            out["cos"] = str(self.exact_cos_sin[0])
            out["sin"] = str(self.exact_cos_sin[1])
        return out


@dataclass
class ReductionTrace:
    input: tuple
    moves: list
    scale: Fraction | float
    output: tuple
    matched_case: int | None
    parameters: dict
    exact: bool

    def as_dict(self):
        return {
            "input": [str(v) for v in self.input],
            "moves": [m.as_dict() for m in self.moves],
            "scale": str(self.scale),
            "output": [str(v) for v in self.output],
            "matched_case": self.matched_case,
            "parameters": {k: str(v) for k, v in self.parameters.items()},
            "exact": self.exact,
        }


def _check_structure(g: LieAlgebra):
    """Structure gate: generators 1, 2 central, (3, 4, 5) closing as a
    rotation triple with unit structure constants."""
    m = g.dim
    if m != 5:
        raise OptimalSystemError("optimal-system reduction implemented for 5 generators")
    for i in (0, 1):
        for j in range(m):
            if any(g.c[i][j][k] for k in range(m)):
                raise OptimalSystemError("first two generators must be central")
    expected = {(2, 3): 4, (3, 4): 2, (2, 4): 3}
    for (i, j), k in expected.items():
        row = [g.c[i][j][t] for t in range(m)]
        nz = [t for t, v in enumerate(row) if v]
        if nz != [k] or abs(row[k]) != 1:
            raise OptimalSystemError("generators 3..5 do not close as a rotation triple")


# Row-action of the three rotation maps on coefficient vectors.  Each
# generator mixes two slots; the orientation records the sign of the
# sine entry so moves agree exactly with the adjoint matrices.
ROTATION_SLOTS = {2: (3, 4), 3: (2, 4), 4: (2, 3)}
ROTATION_ORIENT = {2: 1, 3: -1, 4: 1}


def _is_square(f: Fraction):
    num = f.numerator
    den = f.denominator
    rn = math.isqrt(num)
    rd = math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _apply_rotation(vec, generator, cos_v, sin_v):
    """Row action of Ad(exp(q X_generator)) given cos q and sin q."""
    i, j = ROTATION_SLOTS[generator]
    s_eff = sin_v * ROTATION_ORIENT[generator]
    out = list(vec)
    out[i] = vec[i] * cos_v + vec[j] * s_eff
    out[j] = -vec[i] * s_eff + vec[j] * cos_v
    return out


def _match_pattern(vec, rep: OptimalRep, exact: bool):
    params = {}
    for i, p in enumerate(rep.pattern):
        v = vec[i]
        if isinstance(p, str):
            params[p] = v
        else:
            if exact:
                if v != p:
                    return None
            elif abs(float(v) - float(p)) > MATCH_TOL:
                return None
    return params


def adjoint_orbit_reduce(coeffs, g: LieAlgebra, reps=None) -> ReductionTrace:
    """Reduce a coefficient vector to an optimal-system representative.

    The trace records every move and the overall scaling; an unmatched
    result is reported in the trace (matched_case None), not raised.
    """
    if reps is None:
        reps = default_representatives()
    vec = [Fraction(v) for v in coeffs]
    if not any(vec):
        raise OptimalSystemError("zero vector does not span a subalgebra")
    _check_structure(g)
    # already a representative: identity trace
    for rep in reps:
        params = _match_pattern(vec, rep, exact=True)
        if params is not None:
            return ReductionTrace(tuple(vec), [], Fraction(1), tuple(vec),
                                  rep.case_id, params, exact=True)
    exact = True
    work = list(vec)
    moves = []

    def rotation_move(gen_index):
        nonlocal exact, work
        zero_slot, keep_slot = ROTATION_SLOTS[gen_index]
        orient = ROTATION_ORIENT[gen_index]
        x = work[zero_slot]
        y = work[keep_slot]
        if x == 0:
            return
        # choose cos = y/h and effective sine -x/h so the zeroed slot
        # vanishes and the kept slot becomes the positive hypotenuse
        root = _is_square(x * x + y * y) if exact else None
        if root is not None:
            cos_v = Fraction(y, root)
            sin_v = Fraction(-x, root) * orient
            param = math.atan2(float(sin_v), float(cos_v))
            moves.append(Move(gen_index, param, (cos_v, sin_v)))
        else:
            fx, fy = float(x), float(y)
            h = math.hypot(fx, fy)
            cos_v = fy / h
            sin_v = -fx / h * orient
            param = math.atan2(sin_v, cos_v)
            moves.append(Move(gen_index, param, None))
            exact = False
            work = [float(v) for v in work]
        work = _apply_rotation(work, gen_index, cos_v, sin_v)

    # clear the fourth slot into the fifth, then the third into the fifth
    rotation_move(2)
    rotation_move(3)
    if exact:
        work = [Fraction(v) for v in work]

    def nonzero(v):
        return v != 0 if exact else abs(v) > MATCH_TOL

    # after both rotations the third and fourth slots are clear, so the
    # scaling target is the first central slot, else the second, else
    # the surviving rotation norm
    if nonzero(work[0]):
        lead = 0
    elif nonzero(work[1]):
        lead = 1
    elif nonzero(work[4]):
        lead = 4
    else:
        raise OptimalSystemError("reduction produced the zero vector")
    lead_val = work[lead]
    scale = (Fraction(1) / lead_val) if exact else (1.0 / lead_val)
    work = [v * scale for v in work]
    matched = None
    params = {}
    for rep in reps:
        got = _match_pattern(work, rep, exact=exact)
        if got is not None:
            matched = rep.case_id
            params = got
            break
    return ReductionTrace(tuple(vec), moves, scale, tuple(work), matched, params, exact)


def replay(trace: ReductionTrace):
    """Re-apply the recorded moves and scaling to the recorded input."""
    exact = trace.exact
    work = [Fraction(v) for v in trace.input] if exact else [float(v) for v in trace.input]
    for mv in trace.moves:
        if mv.exact_cos_sin is not None and exact:
            cos_v, sin_v = mv.exact_cos_sin
        else:
            cos_v, sin_v = math.cos(mv.parameter), math.sin(mv.parameter)
            work = [float(v) for v in work]
        work = _apply_rotation(work, mv.generator, cos_v, sin_v)
    return [v * trace.scale for v in work]


def orbit_invariants_check(g: LieAlgebra, candidates=None, parameter="q") -> dict:
    """Canonical invariance of candidate functions of the coefficients
    under every one-parameter adjoint map.

    Default candidates: a1, a2, a3^2 + a4^2 + a5^2."""
    m = g.dim
    syms = [Sym(f"a{i + 1}") for i in range(m)]
    if candidates is None:
        candidates = {
            "a1": syms[0],
            "a2": syms[1],
            "a3^2 + a4^2 + a5^2": to_canonical(
                Add.of(*[Mul.of(syms[i], syms[i]) for i in (2, 3, 4)])
            ),
        }
    maps = [adjoint_exp(g, i, parameter) for i in range(m)]
    report = {}
    for label, expr in candidates.items():
        invariant = True
        failing = []
        for i, amap in enumerate(maps):
            transformed = []
            for k in range(m):
                total = Num(0)
                for j in range(m):
                    total = Add.of(total, Mul.of(syms[j], amap.matrix[j][k]))
                transformed.append(total)
            image = substitute(expr, dict(zip([s.name for s in syms], transformed)))
            if not is_zero(image - expr):
                invariant = False
                failing.append(i + 1)
        report[label] = {"invariant": invariant, "failing_generators": failing}
    return report


def _invariant_signature(rep: OptimalRep):
    """(a1 fixed, a2 fixed-or-free, rotation norm fixed-or-free)."""
    a1 = rep.pattern[0]
    a2 = rep.pattern[1]
    rot = [rep.pattern[i] for i in (2, 3, 4)]
    fixed_norm = sum(p * p for p in rot if not isinstance(p, str))
    norm = "free" if any(isinstance(p, str) for p in rot) else fixed_norm
    return (a1, "free" if isinstance(a2, str) else a2, norm)


def separation_failures(reps) -> list:
    """Pairs of representatives the verified invariants cannot separate:
    identical signatures, treating free slots as full real ranges."""
    out = []
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            s1 = _invariant_signature(reps[i])
            s2 = _invariant_signature(reps[j])
            if s1[0] != s2[0] or s1[1] != s2[1]:
                continue
            n1, n2 = s1[2], s2[2]
            overlap = (
                n1 == n2
                or (n1 == "free" and (n2 == "free" or n2 >= 0))
                or (n2 == "free" and n1 >= 0)
            )
            if overlap:
                out.append((reps[i].case_id, reps[j].case_id))
    return out


def verify_optimal_cover(g: LieAlgebra, reps=None, samples: int = 1000,
                         seed: int = 42) -> dict:
    """Reduce seeded random rational vectors and report coverage,
    invariant drift, and representative separation."""
    if reps is None:
        reps = default_representatives()
    rng = random.Random(seed)
    matched = {}
    unmatched = []
    rejected = 0
    drift_max = 0.0
    replay_max = 0.0
    for _ in range(samples):
        vec = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(g.dim)]
        if not any(vec):
            rejected += 1
            continue
        trace = adjoint_orbit_reduce(vec, g, reps)
        if trace.matched_case is None:
            unmatched.append([str(v) for v in vec])
            continue
        matched[trace.matched_case] = matched.get(trace.matched_case, 0) + 1
        drift_max = max(drift_max, _invariant_drift(trace))
        replayed = replay(trace)
        replay_max = max(
            replay_max,
            max(abs(float(a) - float(b)) for a, b in zip(replayed, trace.output)),
        )
    return {
        "samples": samples,
        "seed": seed,
        "matched": dict(sorted(matched.items())),
        "matched_total": sum(matched.values()),
        "valid_total": samples - rejected,
        "rejected_zero_vectors": rejected,
        "unmatched": unmatched,
        "invariant_drift_max": drift_max,
        "replay_error_max": replay_max,
        "separation_failures": [list(p) for p in separation_failures(reps)],
    }


def _invariant_drift(trace: ReductionTrace) -> float:
    """Scale-adjusted drift of (a1, a2, rotation norm) along a trace."""
    a_in = [float(v) for v in trace.input]
    a_out = [float(v) for v in trace.output]
    scale = float(trace.scale)
    drift = max(
        abs(a_out[0] - a_in[0] * scale),
        abs(a_out[1] - a_in[1] * scale),
    )
    n_in = sum(v * v for v in a_in[2:5])
    n_out = sum(v * v for v in a_out[2:5])
    return max(drift, abs(n_out - n_in * scale * scale))
