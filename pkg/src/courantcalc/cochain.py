"""Graded cochain algebra of an algebroid, as an evaluable expression DAG.

A cochain of degree p is a tuple of components; component k takes p - 2k
section arguments and k function arguments (function slots stand for the
differentials of their entries) and returns a scalar.  Nodes of the DAG are
never evaluated at construction: :func:`evaluate` recurses through the
component formulas for products (signed shuffle sums), the degree +1
differential, interior products and Lie derivatives.  Equality of cochains
is battery-relative: exact agreement of all components on every battery
tuple.

Degree bookkeeping clamps at zero: an interior product applied below degree
0 is the zero cochain.  The ``order`` field is an upper bound for the
differential-operator order of the components in their section slots
(products take the max, the differential adds one, interior products and Lie
derivatives keep the bound of their differential expansion).
"""

from __future__ import annotations

from itertools import combinations

from .battery import Battery
from .report import Report
from .scalar import Scalar

__all__ = [
    "Battery",
    "Cochain",
    "DegreeCapError",
    "scalar_leaf",
    "section_leaf",
    "zero_cochain",
    "mul",
    "differential",
    "interior_e",
    "interior_f",
    "lie_e",
    "lie_f",
    "evaluate",
    "equal",
    "equal_combinations",
    "vanishes",
    "EqualityResult",
    "check_symmetry_condition",
    "symbol_E",
    "symbol_Omega",
    "measure_order_E",
    "cartan_suite",
    "generator_cochains",
    "random_cochain",
    "cochain_from_json",
]

PRODUCT_DEGREE_CAP = 6
DEGREE_CAP = 8


class DegreeCapError(ValueError):
    pass


class Cochain:
    """Base node: degree, order bound, owning algebroid."""

    __slots__ = ("alg", "degree", "order")

    def __init__(self, alg, degree, order):
        self.alg = alg
        self.degree = degree
        self.order = order

    def components(self):
        """Valid component indices k."""
        return range(self.degree // 2 + 1) if self.degree >= 0 else range(0)

    def _eval(self, k, es, fs, ctx):
        raise NotImplementedError

    def __mul__(self, other):
        return mul(self, other)


class _Zero(Cochain):
    def __init__(self, alg, degree):
        super().__init__(alg, degree, 1)

    def _eval(self, k, es, fs, ctx):
        return Scalar.zero(self.alg.n)


class _ScalarLeaf(Cochain):
    __slots__ = ("value",)

    def __init__(self, alg, value):
        super().__init__(alg, 0, 1)
        self.value = value

    def _eval(self, k, es, fs, ctx):
        return self.value


class _SectionLeaf(Cochain):
    __slots__ = ("section",)

    def __init__(self, alg, section):
        super().__init__(alg, 1, 1)
        self.section = section

    def _eval(self, k, es, fs, ctx):
        return self.alg.pairing(self.section, es[0])


class _Product(Cochain):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        super().__init__(left.alg, left.degree + right.degree,
                         max(left.order, right.order))
        self.left = left
        self.right = right

    def _eval(self, k, es, fs, ctx):
        p, q = self.left.degree, self.right.degree
        total = Scalar.zero(self.alg.n)
        for r in range(k + 1):
            t = k - r
            if p - 2 * r < 0 or q - 2 * t < 0:
                continue
            a = p - 2 * r
            for left_idx, right_idx, sign in _shuffles(len(es), a):
                les = tuple(es[i] for i in left_idx)
                res = tuple(es[i] for i in right_idx)
                for fl_idx in combinations(range(len(fs)), r):
                    lfs = tuple(fs[i] for i in fl_idx)
                    rfs = tuple(fs[i] for i in range(len(fs)) if i not in fl_idx)
                    v1 = _eval(self.left, r, les, lfs, ctx)
                    if v1.is_zero():
                        continue
                    v2 = _eval(self.right, t, res, rfs, ctx)
                    if v2.is_zero():
                        continue
                    term = v1 * v2
                    total = total + term if sign > 0 else total - term
        return total


class _Differential(Cochain):
    __slots__ = ("child",)

    def __init__(self, child):
        super().__init__(child.alg, child.degree + 1, child.order + 1)
        self.child = child

    def _eval(self, k, es, fs, ctx):
        alg = self.alg
        child = self.child
        p = child.degree
        total = Scalar.zero(alg.n)
        # function slots feed back through the dual differential
        if k >= 1 and p - 2 * (k - 1) >= 0:
            for mu in range(k):
                rest = fs[:mu] + fs[mu + 1 :]
                v = _eval(child, k - 1, (alg.d_E(fs[mu]),) + es, rest, ctx)
                total = total + v
        if p - 2 * k >= 0:
            # anchor derivative of the contracted component
            for i in range(len(es)):
                v = _eval(child, k, es[:i] + es[i + 1 :], fs, ctx)
                if not v.is_zero():
                    dv = alg.anchor_apply(es[i], v)
                    total = total + dv if i % 2 == 0 else total - dv
            # bracket insertion at the place of the later argument
            for i in range(len(es)):
                for j in range(i + 1, len(es)):
                    br = alg.bracket(es[i], es[j])
                    args = es[:i] + es[i + 1 : j] + (br,) + es[j + 1 :]
                    v = _eval(child, k, args, fs, ctx)
                    total = total - v if i % 2 == 0 else total + v
        return total


class _InteriorE(Cochain):
    __slots__ = ("section", "child")

    def __init__(self, section, child):
        super().__init__(child.alg, child.degree - 1, child.order)
        self.section = section
        self.child = child

    def _eval(self, k, es, fs, ctx):
        return _eval(self.child, k, (self.section,) + es, fs, ctx)


class _InteriorF(Cochain):
    __slots__ = ("function", "child")

    def __init__(self, function, child):
        super().__init__(child.alg, child.degree - 2, child.order)
        self.function = function
        self.child = child

    def _eval(self, k, es, fs, ctx):
        return _eval(self.child, k + 1, es, (self.function,) + fs, ctx)


class _LieE(Cochain):
    """Degree-0 derivation: anticommutator of the interior product with d."""

    __slots__ = ("section", "child", "_a", "_b")

    def __init__(self, section, child):
        super().__init__(child.alg, child.degree, child.order + 1)
        self.section = section
        self.child = child
        self._a = interior_e(section, differential(child))
        self._b = differential(interior_e(section, child))

    def _eval(self, k, es, fs, ctx):
        return _eval(self._a, k, es, fs, ctx) + _eval(self._b, k, es, fs, ctx)


class _LieF(Cochain):
    """Degree -1 derivation: commutator of the function contraction with d."""

    __slots__ = ("function", "child", "_a", "_b")

    def __init__(self, function, child):
        super().__init__(child.alg, child.degree - 1, child.order + 1)
        self.function = function
        self.child = child
        self._a = interior_f(function, differential(child))
        self._b = differential(interior_f(function, child))

    def _eval(self, k, es, fs, ctx):
        return _eval(self._a, k, es, fs, ctx) - _eval(self._b, k, es, fs, ctx)


# ---------------------------------------------------------------------------
# factories (degree underflow gives the zero cochain)
# ---------------------------------------------------------------------------


def scalar_leaf(alg, f):
    return _ScalarLeaf(alg, f)


def section_leaf(alg, section):
    return _SectionLeaf(alg, section)


def zero_cochain(alg, degree):
    return _Zero(alg, degree)


def mul(left, right):
    if left.alg is not right.alg:
        raise ValueError("cochains over different algebroids")
    if isinstance(left, _Zero) or isinstance(right, _Zero):
        return _Zero(left.alg, left.degree + right.degree)
    if left.degree + right.degree > PRODUCT_DEGREE_CAP:
        raise DegreeCapError(
            f"product degree {left.degree + right.degree} exceeds cap {PRODUCT_DEGREE_CAP}")
    return _Product(left, right)


def differential(child):
    if isinstance(child, _Zero):
        return _Zero(child.alg, child.degree + 1)
    if child.degree + 1 > DEGREE_CAP:
        raise DegreeCapError(f"degree {child.degree + 1} exceeds cap {DEGREE_CAP}")
    return _Differential(child)


def interior_e(section, child):
    if child.degree - 1 < 0 or isinstance(child, _Zero):
        return _Zero(child.alg, child.degree - 1)
    return _InteriorE(section, child)


def interior_f(function, child):
    if child.degree - 2 < 0 or isinstance(child, _Zero):
        return _Zero(child.alg, child.degree - 2)
    return _InteriorF(function, child)


def lie_e(section, child):
    if isinstance(child, _Zero):
        return _Zero(child.alg, child.degree)
    return _LieE(section, child)


def lie_f(function, child):
    if child.degree - 1 < 0 or isinstance(child, _Zero):
        return _Zero(child.alg, child.degree - 1)
    return _LieF(function, child)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _shuffles(total, left):
    """Index splits of range(total) into a sorted left/right pair, with sign."""
    for combo in combinations(range(total), left):
        in_left = set(combo)
        rest = tuple(i for i in range(total) if i not in in_left)
        inversions = sum(c - pos for pos, c in enumerate(combo))
        yield combo, rest, (-1 if inversions % 2 else 1)


def _eval(node, k, es, fs, ctx):
    # node is keyed by identity; the cache entry keeps it alive, so ids
    # cannot be recycled while the cache is in use
    key = (node, k, es, fs)
    hit = ctx.get(key)
    if hit is None:
        hit = node._eval(k, es, fs, ctx)
        ctx[key] = hit
    return hit


def evaluate(node, k, sections, functions=(), ctx=None):
    """Component k of the cochain on the given argument tuples."""
    sections = tuple(sections)
    functions = tuple(functions)
    if node.degree >= 0:
        if not 0 <= k <= node.degree // 2:
            raise ValueError(f"component {k} out of range for degree {node.degree}")
        if len(sections) != node.degree - 2 * k or len(functions) != k:
            raise ValueError(
                f"component {k} of a degree-{node.degree} cochain takes "
                f"{node.degree - 2 * k} sections and {k} functions")
    if ctx is None:
        ctx = {}
    return _eval(node, k, sections, functions, ctx)


# ---------------------------------------------------------------------------
# battery-relative equality
# ---------------------------------------------------------------------------


class EqualityResult:
    __slots__ = ("equal", "checked", "witness", "residual")

    def __init__(self, equal, checked, witness=None, residual=None):
        self.equal = equal
        self.checked = checked
        self.witness = witness
        self.residual = residual

    def __bool__(self):
        return self.equal

    def __repr__(self):
        if self.equal:
            return f"EqualityResult(equal, {self.checked} tuples)"
        return f"EqualityResult(differ at {self.witness}, residual {self.residual})"


def _default_battery(alg, *nodes):
    bound = max((n.order for n in nodes), default=1)
    return Battery(alg, degree=2 + bound)


def equal_combinations(lhs, rhs, battery=None, reduced=False, ctx=None):
    """Exact equality of two signed sums of cochains on the battery.

    lhs and rhs are lists of (coefficient, cochain) with rational
    coefficients; all non-zero cochains must share one degree.
    """
    terms = [(c, w) for c, w in lhs] + [(-c, w) for c, w in rhs]
    live = [(c, w) for c, w in terms if not isinstance(w, _Zero)]
    if not live:
        return EqualityResult(True, 0)
    alg = live[0][1].alg
    degree = live[0][1].degree
    for _, w in live:
        if w.degree != degree:
            return EqualityResult(False, 0, witness="degree mismatch",
                                  residual=f"{w.degree} != {degree}")
    if degree < 0:
        return EqualityResult(True, 0)
    if battery is None:
        battery = _default_battery(alg, *[w for _, w in live])
    if ctx is None:
        ctx = {}
    zero = Scalar.zero(alg.n)
    checked = 0
    for k in range(degree // 2 + 1):
        sec_arity = degree - 2 * k
        for secs, funs in _component_tuples(battery, sec_arity, k, reduced):
            checked += 1
            acc = zero
            for coeff, w in live:
                v = _eval(w, k, secs, funs, ctx)
                if v.is_zero():
                    continue
                if coeff == 1:
                    acc = acc + v
                elif coeff == -1:
                    acc = acc - v
                else:
                    acc = acc + Scalar.const(alg.n, coeff) * v
            if not acc.is_zero():
                witness = (f"k={k}", *battery.describe(secs),
                           *(f"f={f}" for f in funs))
                return EqualityResult(False, checked, " , ".join(witness), str(acc))
    return EqualityResult(True, checked)


def _component_tuples(battery, sec_arity, fun_arity, reduced):
    if fun_arity == 0:
        for secs in battery.section_tuples(sec_arity, reduced=reduced):
            yield secs, ()
    else:
        fun_tuples = list(battery.function_tuples(fun_arity))
        for secs in battery.section_tuples(sec_arity, reduced=True):
            for funs in fun_tuples:
                yield secs, funs


def equal(w, h, battery=None, reduced=False, ctx=None):
    """True iff all components of w and h agree exactly on every battery tuple."""
    return equal_combinations([(1, w)], [(1, h)], battery, reduced, ctx)


def vanishes(w, battery=None, reduced=False, ctx=None):
    return equal_combinations([(1, w)], [], battery, reduced, ctx)


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------


def check_symmetry_condition(w, battery=None, reduced=True):
    """Adjacent-swap relation tying component k to component k + 1.

    For every component k, swapping two adjacent section arguments flips the
    value up to a correction by component k + 1 contracted with the pairing
    of the swapped pair (carried in the leading function slot).
    """
    report = Report("symmetry condition")
    if isinstance(w, _Zero) or w.degree < 2:
        report.add("symmetry-condition", True, 0)
        return report
    if battery is None:
        battery = _default_battery(w.alg, w)
    ctx = {}
    checked = 0
    witness = residual = None
    passed = True
    for k in range(w.degree // 2 + 1):
        arity = w.degree - 2 * k
        if arity < 2:
            continue
        for secs, funs in _component_tuples(battery, arity, k, reduced):
            for i in range(arity - 1):
                checked += 1
                swapped = secs[:i] + (secs[i + 1], secs[i]) + secs[i + 2 :]
                plain = _eval(w, k, secs, fs := funs, ctx)
                flip = _eval(w, k, swapped, funs, ctx)
                pair = w.alg.pairing(secs[i], secs[i + 1])
                contracted = _eval(w, k + 1, secs[:i] + secs[i + 2 :],
                                   (pair,) + funs, ctx)
                res = plain + flip + contracted
                if passed and not res.is_zero():
                    passed = False
                    witness = " , ".join((f"k={k}", f"swap at {i}",
                                          *battery.describe(secs)))
                    residual = str(res)
    report.add("symmetry-condition", passed, checked, witness, residual)
    return report


def measure_order_E(w, k, slot, probes, secs, funs, ctx=None, cap=4):
    """Actual differential-operator order of component k in one section slot.

    Returns the smallest s <= cap such that every (s+1)-fold iterated symbol
    built from the probe functions vanishes on the given arguments, or cap + 1.
    """
    if ctx is None:
        ctx = {}

    def iterated(fseq, args):
        if not fseq:
            return _eval(w, k, args, funs, ctx)
        head, rest = fseq[0], fseq[1:]
        scaled = args[:slot] + (args[slot].scale(head),) + args[slot + 1 :]
        return iterated(rest, scaled) - head * iterated(rest, args)

    for s in range(cap + 1):
        vanished = True
        for fseq in _probe_sequences(probes, s + 1):
            if not iterated(fseq, secs).is_zero():
                vanished = False
                break
        if vanished:
            return s
    return cap + 1


def _probe_sequences(probes, depth):
    if depth == 0:
        yield ()
        return
    for i, f in enumerate(probes):
        for rest in _probe_sequences(probes[: i + 1], depth - 1):
            yield (f,) + rest


def symbol_E(w, slot, probe, battery=None, reduced=True):
    """Confirm the section-slot order bounds by iterated-symbol vanishing.

    The declared bound for slot i of component k is the order field of the
    cochain for leading slots and one less for the final slot; the check
    applies the symbol construction (bound + 1) times with the probe
    function(s) and requires an exactly zero result on the battery.
    """
    probes = list(probe) if isinstance(probe, (list, tuple)) else [probe]
    report = Report("section-slot symbols")
    if isinstance(w, _Zero) or w.degree < 1:
        report.add("symbol-E", True, 0)
        return report
    if not 0 <= slot < w.degree:
        raise ValueError(f"section slot {slot} out of range for degree {w.degree}")
    if battery is None:
        battery = _default_battery(w.alg, w)
    ctx = {}
    for k in range(w.degree // 2 + 1):
        arity = w.degree - 2 * k
        if slot >= arity:
            continue
        if arity == 1 or slot < arity - 1:
            bound = w.order
        else:
            bound = max(w.order - 1, 0)
        checked = 0
        passed = True
        witness = residual = None

        def iterated(fseq, args, funs):
            if not fseq:
                return _eval(w, k, args, funs, ctx)
            head, rest = fseq[0], fseq[1:]
            scaled = args[:slot] + (args[slot].scale(head),) + args[slot + 1 :]
            return iterated(rest, scaled, funs) - head * iterated(rest, args, funs)

        for secs, funs in _component_tuples(battery, arity, k, reduced):
            for fseq in _probe_sequences(probes, bound + 1):
                checked += 1
                res = iterated(fseq, secs, funs)
                if passed and not res.is_zero():
                    passed = False
                    witness = " , ".join(battery.describe(secs))
                    residual = str(res)
        report.add(f"symbol-E[k={k},slot={slot},order<={bound}]",
                   passed, checked, witness, residual)
    return report


def symbol_Omega(w, slot, probe, battery=None, reduced=True):
    """Function-slot symbol probed through the product-rule defect.

    Function slots stand for differentials of their entries, so the slot
    symbol is only observable through exact arguments; its symmetrization is
    the defect  w(..., f*g, ...) - f*w(..., g, ...) - g*w(..., f, ...),
    which must vanish for slots acting as derivations.  The check iterates
    the defect (declared order) times and requires exact vanishing.
    """
    probes = list(probe) if isinstance(probe, (list, tuple)) else [probe]
    report = Report("function-slot symbols")
    if isinstance(w, _Zero) or w.degree < 2:
        report.add("symbol-Omega", True, 0)
        return report
    if not 0 <= slot < w.degree // 2:
        raise ValueError(f"function slot {slot} out of range for degree {w.degree}")
    if battery is None:
        battery = _default_battery(w.alg, w)
    ctx = {}
    for k in range(1, w.degree // 2 + 1):
        if slot >= k:
            continue
        arity = w.degree - 2 * k
        checked = 0
        passed = True
        witness = residual = None

        def defect(f, g, secs, funs):
            merged = funs[:slot] + (f * g,) + funs[slot + 1 :]
            with_f = funs[:slot] + (f,) + funs[slot + 1 :]
            with_g = funs[:slot] + (g,) + funs[slot + 1 :]
            return (_eval(w, k, secs, merged, ctx)
                    - f * _eval(w, k, secs, with_g, ctx)
                    - g * _eval(w, k, secs, with_f, ctx))

        for secs, funs in _component_tuples(battery, arity, k, reduced):
            for f in probes:
                checked += 1
                res = defect(f, funs[slot], secs, funs)
                if passed and not res.is_zero():
                    passed = False
                    witness = " , ".join((f"k={k}", *battery.describe(secs),
                                          f"f={f}", f"g={funs[slot]}"))
                    residual = str(res)
        report.add(f"symbol-Omega[k={k},slot={slot}]", passed, checked,
                   witness, residual)
    return report


# ---------------------------------------------------------------------------
# commutation-relation suite
# ---------------------------------------------------------------------------


def cartan_suite(alg, battery=None, cochains=None, reduced=True):
    """All eight commutation relations of the calculus plus the two
    contraction brackets, verified as operator identities on test cochains."""
    if battery is None:
        battery = Battery(alg)
    if cochains is None:
        # a spread over degrees 0..4 so no identity is vacuous
        per_degree = {}
        for w in generator_cochains(alg, battery):
            per_degree.setdefault(w.degree, []).append(w)
        cochains = [w for d in sorted(per_degree) for w in per_degree[d][:2]]
    # the double Lie-derivative identities re-evaluate two differentials per
    # argument tuple, so they run on the low-degree part of the pool; the
    # contraction identities are cheap and keep the full spread
    heavy = [w for w in cochains if w.degree <= 3][:6]
    secs = list(battery.frame) + battery.scaled[:2] + battery.randoms[:1]
    funs = [f for f in battery.functions if not f.is_constant()][:2] \
        + battery.functions[-1:]
    if not funs:
        funs = battery.functions[:2]
    report = Report(f"commutation relations over {alg!r}")
    ctx = {}

    def run(name, instances):
        checked = 0
        passed = True
        witness = None
        for label, lhs, rhs in instances:
            res = equal_combinations(lhs, rhs, battery, reduced=reduced, ctx=ctx)
            checked += res.checked
            if passed and not res:
                passed = False
                witness = f"{label}: {res.witness} (residual {res.residual})"
        report.add(name, passed, checked, witness)

    d_E, pr, br = alg.d_E, alg.pairing, alg.bracket

    run("lie-function-is-contraction-with-dual-differential",
        [(f"f={f}/w{i}", [(1, lie_f(f, w))], [(1, interior_e(d_E(f), w))])
         for f in funs for i, w in enumerate(cochains)])

    run("lie-function-vs-interior-section",
        [(f"f={f},e{j}/w{i}",
          [(1, lie_f(f, interior_e(e, w))), (1, interior_e(e, lie_f(f, w)))],
          [(-1, interior_f(pr(d_E(f), e), w))])
         for f in funs[:2] for j, e in enumerate(secs[: alg.rank])
         for i, w in enumerate(cochains)])

    run("lie-section-vs-interior-function",
        [(f"e{j},f={f}/w{i}",
          [(1, lie_e(e, interior_f(f, w))), (-1, interior_f(f, lie_e(e, w)))],
          [(1, interior_f(pr(d_E(f), e), w))])
         for f in funs[:2] for j, e in enumerate(secs[: alg.rank])
         for i, w in enumerate(cochains)])

    head = secs[: min(len(secs), alg.rank + 2)]
    pairs = [(e1, e2) for i, e1 in enumerate(head) for e2 in head[i:]]

    run("lie-section-vs-interior-section",
        [(f"pair{i}/w{m}",
          [(1, lie_e(e1, interior_e(e2, w))), (-1, interior_e(e2, lie_e(e1, w)))],
          [(1, interior_e(br(e1, e2), w))])
         for i, (e1, e2) in enumerate(pairs[:12])
         for m, w in enumerate(cochains)])

    run("lie-function-lie-function",
        [(f"(f,g)/w{i}",
          [(1, lie_f(f, lie_f(g, w))), (1, lie_f(g, lie_f(f, w)))], [])
         for f in funs[:2] for g in funs[:2] for i, w in enumerate(cochains)])

    run("lie-section-lie-function",
        [(f"e{j},f/w{i}",
          [(1, lie_e(e, lie_f(f, w))), (-1, lie_f(f, lie_e(e, w)))],
          [(1, lie_f(pr(e, d_E(f)), w))])
         for f in funs[:2] for j, e in enumerate(secs[: alg.rank])
         for i, w in enumerate(heavy)])

    run("lie-function-lie-section",
        [(f"f,e{j}/w{i}",
          [(1, lie_f(f, lie_e(e, w))), (-1, lie_e(e, lie_f(f, w)))],
          [(-1, lie_f(pr(e, d_E(f)), w))])
         for f in funs[:2] for j, e in enumerate(secs[: alg.rank])
         for i, w in enumerate(heavy)])

    run("lie-section-lie-section",
        [(f"pair{i}/w{m}",
          [(1, lie_e(e1, lie_e(e2, w))), (-1, lie_e(e2, lie_e(e1, w)))],
          [(1, lie_e(br(e1, e2), w))])
         for i, (e1, e2) in enumerate(pairs[:10])
         for m, w in enumerate(heavy)])

    run("interior-section-anticommutator",
        [(f"pair{i}/w{m}",
          [(1, interior_e(e1, interior_e(e2, w))),
           (1, interior_e(e2, interior_e(e1, w)))],
          [(-1, interior_f(pr(e1, e2), w))])
         for i, (e1, e2) in enumerate(pairs)
         for m, w in enumerate(cochains)][: 12 * len(cochains)])

    run("interior-section-interior-function",
        [(f"e{j},f/w{i}",
          [(1, interior_e(e, interior_f(f, w))),
           (-1, interior_f(f, interior_e(e, w)))], [])
         for f in funs[:2] for j, e in enumerate(secs[: alg.rank])
         for i, w in enumerate(cochains)])

    run("interior-function-interior-function",
        [(f"(f,g)/w{i}",
          [(1, interior_f(f, interior_f(g, w))),
           (-1, interior_f(g, interior_f(f, w)))], [])
         for f in funs[:2] for g in funs[:2] for i, w in enumerate(cochains)])

    return report


# ---------------------------------------------------------------------------
# deterministic cochain generators
# ---------------------------------------------------------------------------


def generator_cochains(alg, battery=None, count=None):
    """Deterministic DAG cochains of degree <= 4 covering every node kind."""
    if battery is None:
        battery = Battery(alg)
    n = alg.n
    e = list(alg.frame)
    r = alg.rank
    if n >= 1:
        f1 = Scalar.variable(n, 1)
        f2 = Scalar.variable(n, min(2, n)) * Scalar.variable(n, 1) \
            if n >= 2 else f1 * f1
    else:
        f1 = Scalar.const(0, 2)
        f2 = Scalar.const(0, -3)
    g = battery.randoms[0] if battery.randoms else e[0]
    s1 = section_leaf(alg, e[0])
    s2 = section_leaf(alg, e[1 % r])
    s3 = section_leaf(alg, e[2 % r].scale(f1))
    s4 = section_leaf(alg, g)
    out = [
        scalar_leaf(alg, f1),
        scalar_leaf(alg, f2),
        s1,
        s3,
        s4,
        differential(scalar_leaf(alg, f1)),
        differential(s1),
        differential(s3),
        mul(s1, s2),
        mul(s3, s4),
        mul(differential(scalar_leaf(alg, f2)), s1),
        differential(mul(s1, s2)),
        mul(differential(s1), s2),
        mul(mul(s1, s2), s3),
        lie_e(e[1 % r], s1),
        lie_e(e[0], mul(s1, s3)),
        lie_f(f1, mul(s2, s4)),
        lie_f(f2, differential(mul(s1, s2))),
        interior_e(e[0], differential(s3)),
        interior_e(e[1 % r], mul(mul(s1, s2), s4)),
        interior_f(f1, differential(differential(scalar_leaf(alg, f2)))),
        interior_f(f2, mul(differential(s1), s3)),
        mul(mul(s1, s2), mul(s3, s4)),
        differential(mul(mul(s1, s2), s3)),
        lie_e(g, differential(s2)),
        interior_f(f1, mul(mul(s1, s3), mul(s2, s4))),
    ]
    return out if count is None else out[:count]


def random_cochain(alg, degree, rng, battery=None):
    """Seeded random DAG of the requested degree (0 <= degree <= 6)."""
    if battery is None:
        battery = Battery(alg)
    pool_sections = battery.frame + battery.scaled[:4] + battery.randoms
    pool_functions = battery.functions

    def rand_section():
        return rng.choice(pool_sections)

    def rand_function():
        return rng.choice(pool_functions)

    def build(p, depth):
        if p < 0:
            return zero_cochain(alg, p)
        if p == 0 and depth <= 0:
            return scalar_leaf(alg, rand_function())
        if depth <= 0:
            w = section_leaf(alg, rand_section())
            for _ in range(p - 1):
                w = mul(w, section_leaf(alg, rand_section()))
            return w
        if p == 0:
            return scalar_leaf(alg, rand_function())
        choices = []
        if p == 1:
            choices.append("leaf")
        if p >= 1:
            choices.append("d")
            choices.append("mul")
            choices.append("lie_e")
        if p + 1 <= PRODUCT_DEGREE_CAP:
            choices.append("ie")
            choices.append("lie_f")
        if p + 2 <= PRODUCT_DEGREE_CAP:
            choices.append("if")
        op = rng.choice(choices)
        if op == "leaf":
            return section_leaf(alg, rand_section())
        if op == "d":
            return differential(build(p - 1, depth - 1))
        if op == "mul":
            a = rng.randint(max(0, p - 3), min(p, 3))
            left = build(a, depth - 1)
            right = build(p - a, depth - 1)
            return mul(left, right)
        if op == "ie":
            return interior_e(rand_section(), build(p + 1, depth - 1))
        if op == "if":
            return interior_f(rand_function(), build(p + 2, depth - 1))
        if op == "lie_e":
            return lie_e(rand_section(), build(p, depth - 1))
        return lie_f(rand_function(), build(p + 1, depth - 1))

    return build(degree, 3)


# ---------------------------------------------------------------------------
# JSON expression trees
# ---------------------------------------------------------------------------


def cochain_from_json(alg, doc):
    """Small expression-tree format for cochains.

    { "op": "scalar", "value": scalar-string }
    { "op": "section", "components": [scalar-string x r] }
    { "op": "d" | "ie" | "if" | "le" | "lf" | "mul", ... } with "child",
    "left"/"right", "section" (component strings) or "function" arguments.
    """
    from .scalar import parse_scalar

    op = doc.get("op")
    if op == "scalar":
        return scalar_leaf(alg, parse_scalar(doc["value"], alg.n))
    if op == "section":
        return section_leaf(alg, alg.section_from_strings(doc["components"]))
    if op == "mul":
        return mul(cochain_from_json(alg, doc["left"]),
                   cochain_from_json(alg, doc["right"]))
    if op == "d":
        return differential(cochain_from_json(alg, doc["child"]))
    child = cochain_from_json(alg, doc["child"]) if "child" in doc else None
    if op == "ie":
        return interior_e(alg.section_from_strings(doc["section"]), child)
    if op == "if":
        return interior_f(parse_scalar(doc["function"], alg.n), child)
    if op == "le":
        return lie_e(alg.section_from_strings(doc["section"]), child)
    if op == "lf":
        return lie_f(parse_scalar(doc["function"], alg.n), child)
    raise ValueError(f"unknown cochain op {op!r}")
