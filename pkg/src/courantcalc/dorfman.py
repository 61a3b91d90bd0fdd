"""Predual bundles and Dorfman connections, with curvature and Bianchi data.

A predual of an algebroid pairs a rank-s bundle against the sections through
an s x r pairing matrix and carries a derivation map taking a function f to
a bundle element d_B f; the compatibility `alpha^T P = anchor` is enforced
at construction, which makes the pairing of d_B f against a section equal
the anchor derivative of f.

A connection is stored through its frame coefficients and extended to all
arguments by its two Leibniz axioms; the third axiom (d_B-equivariance) is
what construction has to arrange and what verification checks.  Curvature
is evaluated by the operator formulas (it is not tensorial in the section
slots), value-level cochains extend the scalar DAG with bundle values, and
the Bianchi identity is checked on both displayed components.
"""

from __future__ import annotations

from itertools import combinations

from . import linalg
from .algebroid import CourantAlgebroid, Section
from .battery import Battery
from .report import PreconditionError, Report
from .scalar import Scalar, parse_scalar

__all__ = [
    "BSection",
    "PredualBundle",
    "DorfmanConnection",
    "ConstructionError",
    "build_connection",
    "verify_connection",
    "affine_combine",
    "difference_check",
    "LinearConnection",
    "induced_linear_connection",
    "compatibility_check",
    "DualConnection",
    "dual_connection",
    "endo_connection",
    "BValuedCochain",
    "b_leaf",
    "tensor",
    "product_b",
    "covariant_differential",
    "interior_e_b",
    "interior_f_b",
    "nabla_e",
    "lie_f_nabla",
    "evaluateB",
    "equal_b",
    "curvature_R0",
    "curvature_R1",
    "curvature_matrix_R0",
    "curvature_matrix_R1",
    "endo_apply",
    "curvature_symbol_checks",
    "bianchi_check",
    "bott_connection",
    "build_standard_connection",
    "build_port_hamiltonian_connections",
    "predual_from_json",
    "connection_from_json",
    "dirac_from_json",
    "christoffel_from_json",
    "predual_diagnose",
]


class ConstructionError(RuntimeError):
    """A builder that promises validity produced an invalid object."""


class BSection:
    """Element of the predual bundle, as components over its frame."""

    __slots__ = ("bundle", "components", "_hash")

    def __init__(self, bundle, components):
        components = tuple(components)
        if len(components) != bundle.rank:
            raise PreconditionError(
                f"bundle section has {len(components)} components, rank is {bundle.rank}")
        self.bundle = bundle
        self.components = components
        self._hash = None

    def __add__(self, other):
        return BSection(self.bundle, tuple(a + b for a, b in
                                           zip(self.components, other.components)))

    def __sub__(self, other):
        return BSection(self.bundle, tuple(a - b for a, b in
                                           zip(self.components, other.components)))

    def __neg__(self):
        return BSection(self.bundle, tuple(-a for a in self.components))

    def scale(self, f):
        return BSection(self.bundle, tuple(f * a for a in self.components))

    def is_zero(self):
        return all(a.is_zero() for a in self.components)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, BSection):
            return NotImplemented
        return self.bundle is other.bundle and self.components == other.components

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((id(self.bundle), self.components))
            self._hash = h
        return h

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"BSection{self}"


class PredualBundle:
    """Rank-s bundle paired against an algebroid.

    pairing_matrix[i][j] pairs frame section j of the algebroid with bundle
    frame element i; alpha_matrix is s x n and d_B f has components
    alpha . grad(f).  Construction verifies alpha^T P = anchor exactly.
    """

    def __init__(self, alg, rank, pairing_matrix, alpha_matrix):
        self.alg = alg
        self.rank = rank
        if len(pairing_matrix) != rank or any(len(r) != alg.rank for r in pairing_matrix):
            raise PreconditionError("pairing matrix must be rank x algebroid-rank")
        if len(alpha_matrix) != rank or any(len(r) != alg.n for r in alpha_matrix):
            raise PreconditionError("alpha matrix must be rank x n")
        self.pairing_matrix = [list(r) for r in pairing_matrix]
        self.alpha_matrix = [list(r) for r in alpha_matrix]
        lhs = linalg.mat_mul(linalg.mat_transpose(self.alpha_matrix), self.pairing_matrix)
        if not linalg.mat_eq(lhs, alg.anchor_matrix):
            raise PreconditionError(
                "alpha^T . pairing must equal the anchor matrix; "
                f"got {lhs} vs {alg.anchor_matrix}")
        n = alg.n
        self._frame = tuple(
            BSection(self, tuple(Scalar.one(n) if k == i else Scalar.zero(n)
                                 for k in range(rank)))
            for i in range(rank))
        self._zero = BSection(self, tuple(Scalar.zero(n) for _ in range(rank)))
        self._dB_cache = {}

    @property
    def frame(self):
        return self._frame

    def zero(self):
        return self._zero

    def element(self, components):
        return BSection(self, components)

    def element_from_strings(self, strings):
        return BSection(self, tuple(parse_scalar(s, self.alg.n) for s in strings))

    def d_B(self, f):
        """Bundle element with components alpha . grad(f)."""
        cached = self._dB_cache.get(f)
        if cached is not None:
            return cached
        n = self.alg.n
        grad = [f.partial(l + 1) for l in range(n)]
        comps = []
        for i in range(self.rank):
            acc = Scalar.zero(n)
            for l in range(n):
                a = self.alpha_matrix[i][l]
                if not (a.is_zero() or grad[l].is_zero()):
                    acc = acc + a * grad[l]
            comps.append(acc)
        out = BSection(self, tuple(comps))
        self._dB_cache[f] = out
        return out

    def b_pairing(self, sigma, b):
        """Pairing of an algebroid section against a bundle element."""
        total = Scalar.zero(self.alg.n)
        g, h = sigma.components, b.components
        for i in range(self.rank):
            if h[i].is_zero():
                continue
            row = self.pairing_matrix[i]
            for j in range(self.alg.rank):
                if not (row[j].is_zero() or g[j].is_zero()):
                    total = total + h[i] * row[j] * g[j]
        return total

    def test_elements(self, degree=2, extras=3, seed=0):
        """Frame, monomial-scaled frame and seeded random bundle elements."""
        import random as _random

        from .scalar import monomials_up_to

        n = self.alg.n
        out = list(self._frame)
        for mono in monomials_up_to(n, degree):
            if not any(mono):
                continue
            m = Scalar.monomial(n, mono)
            for b in self._frame:
                out.append(b.scale(m))
        rng = _random.Random(f"b-battery:{seed}:{n}:{self.rank}")
        from .battery import _random_poly

        for _ in range(extras):
            out.append(BSection(self, [_random_poly(rng, n, min(2, max(degree, 1)))
                                       for _ in range(self.rank)]))
        return out

    def __repr__(self):
        return f"PredualBundle(rank={self.rank}, over {self.alg!r})"


def predual_diagnose(bundle):
    """Rank bookkeeping for the pairing: kernels on both sides and the case.

    Returns a dict with the pairing rank, the rank of the kernel inside the
    bundle, the rank of the kernel inside the algebroid, and which splitting
    case applies ("bundle-extends-algebroid", "algebroid-extends-bundle",
    "isomorphic", or "degenerate-both").
    """
    p_rank = linalg.rank(bundle.pairing_matrix)
    k_rank = bundle.rank - p_rank
    f_rank = bundle.alg.rank - p_rank
    if k_rank == 0 and f_rank == 0:
        case = "isomorphic"
    elif f_rank == 0:
        case = "bundle-extends-algebroid"
    elif k_rank == 0:
        case = "algebroid-extends-bundle"
    else:
        case = "degenerate-both"
    return {"pairing_rank": p_rank, "kernel_in_bundle": k_rank,
            "kernel_in_algebroid": f_rank, "case": case}


class DorfmanConnection:
    """Connection data: gamma[i][j][q] is the coefficient of bundle frame q
    in the derivative of bundle frame j along algebroid frame i.  Arbitrary
    arguments are handled by the two Leibniz axioms."""

    def __init__(self, bundle, gamma):
        alg = bundle.alg
        if len(gamma) != alg.rank or any(len(row) != bundle.rank for row in gamma) \
                or any(len(cell) != bundle.rank for row in gamma for cell in row):
            raise PreconditionError("gamma must be algebroid-rank x rank x rank")
        self.bundle = bundle
        self.alg = alg
        self.gamma = [[list(cell) for cell in row] for row in gamma]
        self._apply_cache = {}

    def apply(self, sigma, b):
        """Covariant derivative of the bundle element b along sigma."""
        if sigma.alg is not self.alg or b.bundle is not self.bundle:
            raise PreconditionError("arguments belong to a different algebroid "
                                    "or bundle")
        key = (sigma, b)
        cached = self._apply_cache.get(key)
        if cached is not None:
            return cached
        alg, bundle = self.alg, self.bundle
        n, r, s = alg.n, alg.rank, bundle.rank
        g, h = sigma.components, b.components
        out = [Scalar.zero(n) for _ in range(s)]
        # frame coefficients
        for i in range(r):
            if g[i].is_zero():
                continue
            gi = self.gamma[i]
            for j in range(s):
                if h[j].is_zero():
                    continue
                coeff = g[i] * h[j]
                for q in range(s):
                    c = gi[j][q]
                    if not c.is_zero():
                        out[q] = out[q] + coeff * c
        # derivative of the bundle components along the anchor
        row = alg._anchor_row(sigma)
        for q in range(s):
            acc = out[q]
            for l in range(n):
                if row[l].is_zero():
                    continue
                d = h[q].partial(l + 1)
                if not d.is_zero():
                    acc = acc + row[l] * d
            out[q] = acc
        # pairing term against the derivative of the section components
        for i in range(r):
            if g[i].is_zero() or g[i].is_constant():
                continue
            coeff = Scalar.zero(n)
            for j in range(s):
                p = bundle.pairing_matrix[j][i]
                if not (p.is_zero() or h[j].is_zero()):
                    coeff = coeff + h[j] * p
            if coeff.is_zero():
                continue
            db = bundle.d_B(g[i])
            for q in range(s):
                if not db.components[q].is_zero():
                    out[q] = out[q] + coeff * db.components[q]
        result = BSection(bundle, tuple(out))
        self._apply_cache[key] = result
        return result

    def __repr__(self):
        return f"DorfmanConnection(over {self.bundle!r})"


# ---------------------------------------------------------------------------
# construction and verification
# ---------------------------------------------------------------------------


def build_connection(bundle, battery=None, verify=True):
    """Produce a connection on the predual bundle.

    The frame values start from the derivation term d_B of the pairing
    coefficients; the obstruction to the third axiom is linear in a
    correction matrix per algebroid frame index, solved exactly over the
    fraction field with deterministic pivoting and free block set to zero.
    Raises PreconditionError when some system is inconsistent and
    ConstructionError if the result fails verification (a self-test; it
    cannot happen when the predual compatibility holds).
    """
    alg, s, n, r = bundle.alg, bundle.rank, bundle.alg.n, bundle.alg.rank
    A, P = bundle.alpha_matrix, bundle.pairing_matrix
    a_const = all(x.is_constant() for row in A for x in row)

    corrections = []
    if a_const:
        corrections = [None] * r
    else:
        dA = [[[A[t][l].partial(j + 1) for l in range(n)] for j in range(n)]
              for t in range(s)]
        at = linalg.mat_transpose(A)
        for k in range(r):
            nk = [[Scalar.zero(n) for _ in range(s)] for _ in range(n)]
            for l in range(n):
                for q in range(s):
                    acc = Scalar.zero(n)
                    for t in range(s):
                        p = P[t][k]
                        if p.is_zero():
                            continue
                        for j in range(n):
                            first = A[q][j] * dA[t][j][l] if not (
                                A[q][j].is_zero() or dA[t][j][l].is_zero()) else None
                            second = A[t][j] * dA[q][j][l] if not (
                                A[t][j].is_zero() or dA[q][j][l].is_zero()) else None
                            if first is not None:
                                acc = acc + first * p
                            if second is not None:
                                acc = acc - second * p
                    nk[l][q] = acc
            ck = linalg.solve_matrix(at, nk)
            if ck is None:
                raise PreconditionError(
                    f"no connection correction exists for frame index {k}: "
                    "the linear system alpha^T C = N is inconsistent")
            corrections.append(ck)

    gamma = []
    for k in range(r):
        rows = []
        for j in range(s):
            base = bundle.d_B(P[j][k]).components
            if corrections[k] is None:
                rows.append(list(base))
            else:
                rows.append([base[q] + corrections[k][j][q] for q in range(s)])
        gamma.append(rows)
    conn = DorfmanConnection(bundle, gamma)
    if verify:
        if battery is None:
            battery = Battery(alg)
        report = verify_connection(conn, battery)
        if not report.passed:
            bad = report.failed_checks()[0]
            raise ConstructionError(
                f"constructed connection failed {bad.name} at {bad.witness} "
                f"(residual {bad.residual})")
    return conn


def verify_connection(conn, battery, b_elements=None):
    """Exact check of the three connection axioms on battery data."""
    bundle, alg = conn.bundle, conn.alg
    if b_elements is None:
        b_elements = bundle.test_elements(degree=battery.degree,
                                          extras=battery.extras, seed=battery.seed)
    secs = battery.frame + battery.scaled[: 2 * alg.rank] + battery.randoms
    funs = battery.functions
    bs = b_elements
    report = Report(f"connection axioms of {conn!r}")

    def record(name, failures, checked):
        if failures:
            witness, residual = failures[0]
            report.add(name, False, checked, witness, residual)
        else:
            report.add(name, True, checked)

    fails = []
    checked = 0
    for sigma in secs:
        for f in funs[:6] + funs[-2:]:
            for b in bs[:: max(1, len(bs) // 8)]:
                checked += 1
                res = (conn.apply(sigma.scale(f), b) - conn.apply(sigma, b).scale(f)
                       - bundle.d_B(f).scale(bundle.b_pairing(sigma, b)))
                if not res.is_zero():
                    fails.append((f"{battery.label(sigma)}, f={f}, b={b}", str(res)))
    record("scaling-in-the-section-slot", fails, checked)

    fails = []
    checked = 0
    for sigma in secs:
        for f in funs[:6] + funs[-2:]:
            for b in bs[:: max(1, len(bs) // 8)]:
                checked += 1
                res = (conn.apply(sigma, b.scale(f)) - conn.apply(sigma, b).scale(f)
                       - b.scale(alg.anchor_apply(sigma, f)))
                if not res.is_zero():
                    fails.append((f"{battery.label(sigma)}, f={f}, b={b}", str(res)))
    record("leibniz-in-the-bundle-slot", fails, checked)

    fails = []
    checked = 0
    for sigma in secs:
        for f in funs:
            checked += 1
            res = conn.apply(sigma, bundle.d_B(f)) - bundle.d_B(alg.anchor_apply(sigma, f))
            if not res.is_zero():
                fails.append((f"{battery.label(sigma)}, f={f}", str(res)))
    record("derivation-image-equivariance", fails, checked)
    return report


def affine_combine(conn0, conn1, g):
    """The affine combination (1 - g) conn0 + g conn1 on a shared predual."""
    if conn0.bundle is not conn1.bundle:
        raise PreconditionError("connections live on different preduals")
    if g.is_zero():
        return conn0
    one = Scalar.one(conn0.alg.n)
    gamma = [[[(one - g) * a + g * b for a, b in zip(ra, rb)]
              for ra, rb in zip(rowa, rowb)]
             for rowa, rowb in zip(conn0.gamma, conn1.gamma)]
    return DorfmanConnection(conn0.bundle, gamma)


def difference_check(conn0, conn1, battery, b_elements=None):
    """The difference of two connections is bilinear over the scalar ring
    and kills every d_B image."""
    bundle, alg = conn0.bundle, conn0.alg
    if conn1.bundle is not bundle:
        raise PreconditionError("connections live on different preduals")
    if b_elements is None:
        b_elements = bundle.test_elements(degree=battery.degree,
                                          extras=battery.extras, seed=battery.seed)
    secs = battery.frame + battery.scaled[: alg.rank] + battery.randoms
    report = Report("difference of connections")

    def diff(sigma, b):
        return conn0.apply(sigma, b) - conn1.apply(sigma, b)

    fails, checked = [], 0
    for sigma in secs:
        for f in battery.functions[:5]:
            for b in b_elements[:: max(1, len(b_elements) // 6)]:
                checked += 1
                res = diff(sigma.scale(f), b) - diff(sigma, b).scale(f)
                if not res.is_zero():
                    fails.append((f"{battery.label(sigma)}, f={f}", str(res)))
    report.add("linear-over-functions-in-the-section-slot", not fails, checked,
               *(fails[0] if fails else (None, None)))

    fails, checked = [], 0
    for sigma in secs:
        for f in battery.functions[:5]:
            for b in b_elements[:: max(1, len(b_elements) // 6)]:
                checked += 1
                res = diff(sigma, b.scale(f)) - diff(sigma, b).scale(f)
                if not res.is_zero():
                    fails.append((f"{battery.label(sigma)}, f={f}", str(res)))
    report.add("linear-over-functions-in-the-bundle-slot", not fails, checked,
               *(fails[0] if fails else (None, None)))

    fails, checked = [], 0
    for sigma in secs:
        for f in battery.functions:
            checked += 1
            res = diff(sigma, bundle.d_B(f))
            if not res.is_zero():
                fails.append((f"{battery.label(sigma)}, f={f}", str(res)))
    report.add("kills-derivation-images", not fails, checked,
               *(fails[0] if fails else (None, None)))
    return report


# ---------------------------------------------------------------------------
# induced linear connection on the algebroid
# ---------------------------------------------------------------------------


class LinearConnection:
    """Classical module connection induced on the algebroid sections.

    case "K": the bundle frame starts with a copy of the algebroid frame
    (pairing rows above the kernel block equal the algebroid pairing); a
    bundle element acts through its algebroid part.
    case "F": the algebroid frame starts with a copy of the bundle frame;
    bundle elements embed as sections.
    """

    def __init__(self, conn, case):
        self.conn = conn
        self.case = case
        bundle, alg = conn.bundle, conn.alg
        r, s = alg.rank, bundle.rank
        zero = Scalar.zero(alg.n)
        if case == "K":
            if s < r:
                raise PreconditionError("case K needs bundle rank >= algebroid rank")
            for i in range(s):
                for j in range(r):
                    want = alg.pairing_matrix[i][j] if i < r else zero
                    if bundle.pairing_matrix[i][j] != want:
                        raise PreconditionError(
                            "case K adapted-frame check failed at "
                            f"({i}, {j}): {bundle.pairing_matrix[i][j]} != {want}")
        elif case == "F":
            if s > r:
                raise PreconditionError("case F needs bundle rank <= algebroid rank")
            for i in range(s):
                for j in range(r):
                    if bundle.pairing_matrix[i][j] != alg.pairing_matrix[i][j]:
                        raise PreconditionError(
                            "case F adapted-frame check failed at "
                            f"({i}, {j}): {bundle.pairing_matrix[i][j]} != "
                            f"{alg.pairing_matrix[i][j]}")
        else:
            raise PreconditionError(f"case must be 'K' or 'F', got {case!r}")

    def _to_section(self, b):
        alg = self.conn.alg
        if self.case == "K":
            return Section(alg, b.components[: alg.rank])
        zero = Scalar.zero(alg.n)
        return Section(alg, b.components + (zero,) * (alg.rank - len(b.components)))

    def apply(self, b, e):
        """Derivative of the section e along the bundle element b."""
        conn = self.conn
        return self._to_section(conn.apply(e, b)) - conn.alg.bracket(e, self._to_section(b))

    def anchor_apply(self, b, f):
        return self.conn.alg.anchor_apply(self._to_section(b), f)


def induced_linear_connection(conn, case, battery=None, verify=True):
    lin = LinearConnection(conn, case)
    if verify:
        if battery is None:
            battery = Battery(conn.alg)
        report = verify_linear_connection(lin, battery)
        if not report.passed:
            bad = report.failed_checks()[0]
            raise ConstructionError(
                f"induced connection failed {bad.name} at {bad.witness} "
                f"(residual {bad.residual})")
    return lin


def verify_linear_connection(lin, battery, b_elements=None):
    conn = lin.conn
    bundle, alg = conn.bundle, conn.alg
    if b_elements is None:
        b_elements = bundle.test_elements(degree=battery.degree,
                                          extras=battery.extras, seed=battery.seed)
    secs = battery.frame + battery.scaled[: alg.rank] + battery.randoms
    report = Report(f"module-connection laws ({lin.case})")

    fails, checked = [], 0
    for b in b_elements[:: max(1, len(b_elements) // 8)]:
        for f in battery.functions[:5]:
            for e in secs:
                checked += 1
                res = lin.apply(b.scale(f), e) - lin.apply(b, e).scale(f)
                if not res.is_zero():
                    fails.append((f"b={b}, f={f}, {battery.label(e)}", str(res)))
    report.add("tensorial-in-the-bundle-slot", not fails, checked,
               *(fails[0] if fails else (None, None)))

    fails, checked = [], 0
    for b in b_elements[:: max(1, len(b_elements) // 8)]:
        for f in battery.functions[:5]:
            for e in secs:
                checked += 1
                res = (lin.apply(b, e.scale(f)) - lin.apply(b, e).scale(f)
                       - e.scale(lin.anchor_apply(b, f)))
                if not res.is_zero():
                    fails.append((f"b={b}, f={f}, {battery.label(e)}", str(res)))
    report.add("leibniz-in-the-section-slot", not fails, checked,
               *(fails[0] if fails else (None, None)))
    return report


def compatibility_check(conn, lin, battery, b_elements=None):
    """Pairing compatibility tying the bracket, the connection and its
    induced module connection."""
    bundle, alg = conn.bundle, conn.alg
    if b_elements is None:
        b_elements = bundle.test_elements(degree=battery.degree,
                                          extras=battery.extras, seed=battery.seed)
    secs = battery.frame + battery.scaled[: alg.rank] + battery.randoms[:2]
    report = Report("bracket-connection compatibility")
    fails, checked = [], 0
    for e in secs:
        for ep in secs:
            for b in b_elements[:: max(1, len(b_elements) // 6)]:
                checked += 1
                res = (alg.anchor_apply(e, bundle.b_pairing(ep, b))
                       - bundle.b_pairing(alg.bracket(e, ep), b)
                       + alg.pairing(lin.apply(b, e), ep)
                       - bundle.b_pairing(ep, conn.apply(e, b)))
                if not res.is_zero():
                    fails.append(
                        (f"{battery.label(e)}, {battery.label(ep)}, b={b}", str(res)))
    report.add("pairing-compatibility-with-connection", not fails, checked,
               *(fails[0] if fails else (None, None)))
    return report


# ---------------------------------------------------------------------------
# dual and endomorphism connections
# ---------------------------------------------------------------------------


class DualConnection:
    """Connection on the dual bundle pinned by the duality identity:
    the anchor derivative of a dual pairing splits across the two slots."""

    def __init__(self, conn):
        self.conn = conn
        self.bundle = conn.bundle
        self.alg = conn.alg
        s = self.bundle.rank
        # frame coefficients: minus the transposed block of the base coefficients
        self.dual_gamma = [[[-conn.gamma[k][j][i] for j in range(s)]
                            for i in range(s)] for k in range(self.alg.rank)]

    def apply(self, sigma, beta):
        """beta is a components tuple over the dual frame."""
        alg, bundle = self.alg, self.bundle
        n, r, s = alg.n, alg.rank, bundle.rank
        g = sigma.components
        out = [Scalar.zero(n) for _ in range(s)]
        for k in range(r):
            if g[k].is_zero():
                continue
            dg = self.dual_gamma[k]
            for i in range(s):
                if beta[i].is_zero():
                    continue
                coeff = g[k] * beta[i]
                for j in range(s):
                    c = dg[i][j]
                    if not c.is_zero():
                        out[j] = out[j] + coeff * c
        row = alg._anchor_row(sigma)
        for j in range(s):
            acc = out[j]
            for l in range(n):
                if row[l].is_zero():
                    continue
                d = beta[j].partial(l + 1)
                if not d.is_zero():
                    acc = acc + row[l] * d
            out[j] = acc
        # correction for non-constant section coefficients
        for k in range(r):
            if g[k].is_zero() or g[k].is_constant():
                continue
            db = bundle.d_B(g[k]).components
            coeff = Scalar.zero(n)
            for i in range(s):
                if not (beta[i].is_zero() or db[i].is_zero()):
                    coeff = coeff + beta[i] * db[i]
            if coeff.is_zero():
                continue
            for j in range(s):
                p = bundle.pairing_matrix[j][k]
                if not p.is_zero():
                    out[j] = out[j] - coeff * p
        return tuple(out)

    def dual_pair(self, beta, b):
        total = Scalar.zero(self.alg.n)
        for c, h in zip(beta, b.components):
            if not (c.is_zero() or h.is_zero()):
                total = total + c * h
        return total

    def curvature_R0(self, sigma, tau, beta):
        br = self.alg.bracket(sigma, tau)
        return tuple(a - b - c for a, b, c in zip(
            self.apply(sigma, self.apply(tau, beta)),
            self.apply(tau, self.apply(sigma, beta)),
            self.apply(br, beta)))


def dual_connection(conn):
    return DualConnection(conn)


def endo_connection(conn):
    """Operator form of the induced connection on bundle endomorphisms:
    the commutator of the covariant derivative with the endomorphism."""

    def nabla_tilde(sigma, matrix):
        return endo_apply(conn, sigma, matrix)

    return nabla_tilde


def endo_apply(conn, sigma, matrix):
    """Matrix of the commutator derivative of an endomorphism matrix."""
    bundle = conn.bundle
    s = bundle.rank
    cols = []
    for j in range(s):
        mb = BSection(bundle, tuple(matrix[q][j] for q in range(s)))
        direct = conn.apply(sigma, mb)
        back = conn.apply(sigma, bundle.frame[j])
        corrected = [direct.components[q] for q in range(s)]
        for q in range(s):
            acc = corrected[q]
            for t in range(s):
                m = matrix[q][t]
                if not (m.is_zero() or back.components[t].is_zero()):
                    acc = acc - m * back.components[t]
            corrected[q] = acc
        cols.append(corrected)
    return [[cols[j][q] for j in range(s)] for q in range(s)]


def matrix_apply(matrix, b):
    s = len(matrix)
    comps = []
    for q in range(s):
        acc = Scalar.zero(b.bundle.alg.n)
        for j in range(s):
            m = matrix[q][j]
            if not (m.is_zero() or b.components[j].is_zero()):
                acc = acc + m * b.components[j]
        comps.append(acc)
    return BSection(b.bundle, comps)


# ---------------------------------------------------------------------------
# bundle-valued cochains and the covariant differential
# ---------------------------------------------------------------------------


class BValuedCochain:
    """Cochain with values in the predual bundle; components take section
    and function arguments exactly like scalar cochains."""

    __slots__ = ("bundle", "degree", "order")

    def __init__(self, bundle, degree, order):
        self.bundle = bundle
        self.degree = degree
        self.order = order

    def _eval(self, k, es, fs, ctx):
        raise NotImplementedError


class _BZero(BValuedCochain):
    def __init__(self, bundle, degree):
        super().__init__(bundle, degree, 1)

    def _eval(self, k, es, fs, ctx):
        return self.bundle.zero()


class _BLeaf(BValuedCochain):
    __slots__ = ("value",)

    def __init__(self, bundle, value):
        super().__init__(bundle, 0, 1)
        self.value = value

    def _eval(self, k, es, fs, ctx):
        return self.value


class _BTensor(BValuedCochain):
    __slots__ = ("omega", "value")

    def __init__(self, omega, bundle, value):
        super().__init__(bundle, omega.degree, omega.order)
        self.omega = omega
        self.value = value

    def _eval(self, k, es, fs, ctx):
        from .cochain import _eval as eval_scalar

        coeff = eval_scalar(self.omega, k, es, fs, ctx)
        if coeff.is_zero():
            return self.bundle.zero()
        return self.value.scale(coeff)


class _BProduct(BValuedCochain):
    __slots__ = ("omega", "child")

    def __init__(self, omega, child):
        super().__init__(child.bundle, omega.degree + child.degree,
                         max(omega.order, child.order))
        self.omega = omega
        self.child = child

    def _eval(self, k, es, fs, ctx):
        from .cochain import _eval as eval_scalar

        p, q = self.omega.degree, self.child.degree
        total = self.bundle.zero()
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
                    v1 = eval_scalar(self.omega, r, les, lfs, ctx)
                    if v1.is_zero():
                        continue
                    v2 = _eval_b(self.child, t, res, rfs, ctx)
                    if v2.is_zero():
                        continue
                    term = v2.scale(v1)
                    total = total + term if sign > 0 else total - term
        return total


class _BCovariantDifferential(BValuedCochain):
    __slots__ = ("conn", "child")

    def __init__(self, conn, child):
        super().__init__(child.bundle, child.degree + 1, child.order + 1)
        self.conn = conn
        self.child = child

    def _eval(self, k, es, fs, ctx):
        conn = self.conn
        alg = conn.alg
        child = self.child
        p = child.degree
        total = self.bundle.zero()
        if k >= 1 and p - 2 * (k - 1) >= 0:
            for mu in range(k):
                rest = fs[:mu] + fs[mu + 1 :]
                total = total + _eval_b(child, k - 1,
                                        (alg.d_E(fs[mu]),) + es, rest, ctx)
        if p - 2 * k >= 0:
            for i in range(len(es)):
                v = _eval_b(child, k, es[:i] + es[i + 1 :], fs, ctx)
                if not v.is_zero():
                    dv = conn.apply(es[i], v)
                    total = total + dv if i % 2 == 0 else total - dv
            for i in range(len(es)):
                for j in range(i + 1, len(es)):
                    br = alg.bracket(es[i], es[j])
                    args = es[:i] + es[i + 1 : j] + (br,) + es[j + 1 :]
                    v = _eval_b(child, k, args, fs, ctx)
                    total = total - v if i % 2 == 0 else total + v
        return total


class _BInteriorE(BValuedCochain):
    __slots__ = ("section", "child")

    def __init__(self, section, child):
        super().__init__(child.bundle, child.degree - 1, child.order)
        self.section = section
        self.child = child

    def _eval(self, k, es, fs, ctx):
        return _eval_b(self.child, k, (self.section,) + es, fs, ctx)


class _BInteriorF(BValuedCochain):
    __slots__ = ("function", "child")

    def __init__(self, function, child):
        super().__init__(child.bundle, child.degree - 2, child.order)
        self.function = function
        self.child = child

    def _eval(self, k, es, fs, ctx):
        return _eval_b(self.child, k + 1, es, (self.function,) + fs, ctx)


class _BNablaE(BValuedCochain):
    """Degree-0 operator: anticommutator of the interior product with the
    covariant differential."""

    __slots__ = ("_a", "_b")

    def __init__(self, conn, section, child):
        super().__init__(child.bundle, child.degree, child.order + 1)
        self._a = interior_e_b(section, covariant_differential(conn, child))
        self._b = covariant_differential(conn, interior_e_b(section, child))

    def _eval(self, k, es, fs, ctx):
        return _eval_b(self._a, k, es, fs, ctx) + _eval_b(self._b, k, es, fs, ctx)


class _BLieF(BValuedCochain):
    """Degree -1 operator: commutator of the function contraction with the
    covariant differential."""

    __slots__ = ("_a", "_b")

    def __init__(self, conn, function, child):
        super().__init__(child.bundle, child.degree - 1, child.order + 1)
        self._a = interior_f_b(function, covariant_differential(conn, child))
        self._b = covariant_differential(conn, interior_f_b(function, child))

    def _eval(self, k, es, fs, ctx):
        return _eval_b(self._a, k, es, fs, ctx) - _eval_b(self._b, k, es, fs, ctx)


def _shuffles(total, left):
    for combo in combinations(range(total), left):
        in_left = set(combo)
        rest = tuple(i for i in range(total) if i not in in_left)
        inversions = sum(c - pos for pos, c in enumerate(combo))
        yield combo, rest, (-1 if inversions % 2 else 1)


def b_leaf(bundle, b):
    return _BLeaf(bundle, b)


def tensor(omega, bundle, b):
    return _BTensor(omega, bundle, b)


def product_b(omega, child):
    from .cochain import _Zero as _ScalarZero

    if isinstance(omega, _ScalarZero) or isinstance(child, _BZero):
        return _BZero(child.bundle, omega.degree + child.degree)
    return _BProduct(omega, child)


def covariant_differential(conn, child):
    if isinstance(child, _BZero):
        return _BZero(child.bundle, child.degree + 1)
    return _BCovariantDifferential(conn, child)


def interior_e_b(section, child):
    if child.degree - 1 < 0 or isinstance(child, _BZero):
        return _BZero(child.bundle, child.degree - 1)
    return _BInteriorE(section, child)


def interior_f_b(function, child):
    if child.degree - 2 < 0 or isinstance(child, _BZero):
        return _BZero(child.bundle, child.degree - 2)
    return _BInteriorF(function, child)


def nabla_e(conn, section, child):
    if isinstance(child, _BZero):
        return child
    return _BNablaE(conn, section, child)


def lie_f_nabla(conn, function, child):
    if child.degree - 1 < 0 or isinstance(child, _BZero):
        return _BZero(child.bundle, child.degree - 1)
    return _BLieF(conn, function, child)


def _eval_b(node, k, es, fs, ctx):
    key = (node, k, es, fs)
    hit = ctx.get(key)
    if hit is None:
        hit = node._eval(k, es, fs, ctx)
        ctx[key] = hit
    return hit


def evaluateB(node, k, sections, functions=(), ctx=None):
    sections = tuple(sections)
    functions = tuple(functions)
    if node.degree >= 0:
        if not 0 <= k <= node.degree // 2:
            raise ValueError(f"component {k} out of range for degree {node.degree}")
        if len(sections) != node.degree - 2 * k or len(functions) != k:
            raise ValueError("argument arity mismatch")
    if ctx is None:
        ctx = {}
    return _eval_b(node, k, sections, functions, ctx)


def equal_b(lhs, rhs, battery, reduced=True, ctx=None):
    """Exact equality of signed sums of bundle-valued cochains on the battery."""
    terms = [(c, w) for c, w in lhs] + [(-c, w) for c, w in rhs]
    live = [(c, w) for c, w in terms if not isinstance(w, _BZero)]
    if not live:
        return True, 0, None, None
    degree = live[0][1].degree
    bundle = live[0][1].bundle
    for _, w in live:
        if w.degree != degree:
            return False, 0, "degree mismatch", f"{w.degree} != {degree}"
    if degree < 0:
        return True, 0, None, None
    if ctx is None:
        ctx = {}
    checked = 0
    for k in range(degree // 2 + 1):
        arity = degree - 2 * k
        stream = ((secs, ()) for secs in battery.section_tuples(arity, reduced=reduced)) \
            if k == 0 else (
                (secs, funs)
                for secs in battery.section_tuples(arity, reduced=True)
                for funs in battery.function_tuples(k))
        for secs, funs in stream:
            checked += 1
            acc = bundle.zero()
            for coeff, w in live:
                v = _eval_b(w, k, secs, funs, ctx)
                if v.is_zero():
                    continue
                if coeff == 1:
                    acc = acc + v
                elif coeff == -1:
                    acc = acc - v
                else:
                    acc = acc + v.scale(Scalar.const(bundle.alg.n, coeff))
            if not acc.is_zero():
                witness = " , ".join((f"k={k}", *battery.describe(secs),
                                      *(f"f={f}" for f in funs)))
                return False, checked, witness, str(acc)
    return True, checked, None, None


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------


def curvature_R0(conn, sigma, tau, b):
    """Three-term curvature operator; not tensorial in the section slots."""
    return (conn.apply(sigma, conn.apply(tau, b))
            - conn.apply(tau, conn.apply(sigma, b))
            - conn.apply(conn.alg.bracket(sigma, tau), b))


def curvature_R1(conn, f, b):
    """Derivative along the pairing-dual differential of f."""
    return conn.apply(conn.alg.d_E(f), b)


def curvature_matrix_R0(conn, sigma, tau, cache=None):
    """Endomorphism matrix of the curvature at fixed section arguments.

    Linearity over functions in the bundle slot is a consequence of the
    connection axioms, so the frame columns determine the operator.
    """
    if cache is not None:
        hit = cache.get((sigma, tau))
        if hit is not None:
            return hit
    bundle = conn.bundle
    cols = [curvature_R0(conn, sigma, tau, bj).components for bj in bundle.frame]
    out = [[cols[j][q] for j in range(bundle.rank)] for q in range(bundle.rank)]
    if cache is not None:
        cache[(sigma, tau)] = out
    return out


def curvature_matrix_R1(conn, f, cache=None):
    if cache is not None:
        hit = cache.get(f)
        if hit is not None:
            return hit
    bundle = conn.bundle
    cols = [curvature_R1(conn, f, bj).components for bj in bundle.frame]
    out = [[cols[j][q] for j in range(bundle.rank)] for q in range(bundle.rank)]
    if cache is not None:
        cache[f] = out
    return out


def curvature_symbol_checks(conn, lin, battery, b_elements=None):
    """Scaling defects of the curvature in both section slots.

    The second-slot defect must contract to the induced module connection
    against the derivation image; the first-slot defect carries two extra
    terms (dual differential of the pairing and a rescaled derivative).
    """
    bundle, alg = conn.bundle, conn.alg
    if b_elements is None:
        b_elements = bundle.test_elements(degree=battery.degree,
                                          extras=battery.extras, seed=battery.seed)
    frame = battery.frame
    probes = battery.scaled[: 2] + battery.randoms[:1]
    pairs = [(a, b) for a in frame for b in frame]
    pairs += [(p, frame[i % len(frame)]) for i, p in enumerate(probes)]
    pairs += [(frame[(i + 1) % len(frame)], p) for i, p in enumerate(probes)]
    if battery.randoms:
        pairs.append((battery.randoms[0], battery.randoms[-1]))
    funs = [f for f in battery.functions if not f.is_constant()][:3] \
        or battery.functions[:2]
    bs = b_elements[:: max(1, len(b_elements) // 4)]
    report = Report("curvature slot symbols")

    fails, checked = [], 0
    for e1, e2 in pairs:
        for f in funs:
            for b in bs:
                checked += 1
                lhs = (curvature_R0(conn, e1, e2.scale(f), b)
                       - curvature_R0(conn, e1, e2, b).scale(f))
                rhs = bundle.d_B(f).scale(-alg.pairing(lin.apply(b, e1), e2))
                if not (lhs - rhs).is_zero():
                    fails.append(
                        (f"{battery.label(e1)}, {battery.label(e2)}, f={f}, b={b}",
                         str(lhs - rhs)))
    report.add("second-slot-symbol", not fails, checked,
               *(fails[0] if fails else (None, None)))

    fails, checked = [], 0
    for e1, e2 in pairs:
        for f in funs:
            for b in bs:
                checked += 1
                lhs = (curvature_R0(conn, e1.scale(f), e2, b)
                       - curvature_R0(conn, e1, e2, b).scale(f))
                pair12 = alg.pairing(e1, e2)
                rhs = bundle.d_B(f).scale(alg.pairing(e1, lin.apply(b, e2)))
                rhs = rhs - bundle.d_B(f).scale(
                    bundle.b_pairing(alg.d_E(pair12), b))
                rhs = rhs - conn.apply(alg.d_E(f).scale(pair12), b)
                if not (lhs - rhs).is_zero():
                    fails.append(
                        (f"{battery.label(e1)}, {battery.label(e2)}, f={f}, b={b}",
                         str(lhs - rhs)))
    report.add("first-slot-symbol", not fails, checked,
               *(fails[0] if fails else (None, None)))
    return report


def bianchi_check(conn, battery, b_elements=None, dual_check=True):
    """Both components of the covariant differential of the curvature.

    The degree-3 component combines commutator derivatives of the curvature
    endomorphisms with curvature at bracket arguments (evaluated by the
    operator formula, never by contraction); the second component ties the
    curvature along dual differentials to the endomorphism derivative.
    """
    bundle, alg = conn.bundle, conn.alg
    if b_elements is None:
        b_elements = bundle.test_elements(degree=battery.degree,
                                          extras=battery.extras, seed=battery.seed)
    report = Report("Bianchi identity")
    r0_cache = {}

    fails, checked = [], 0
    for e1, e2, e3 in battery.section_tuples(3, reduced=True):
        checked += 1
        m = endo_apply(conn, e1, curvature_matrix_R0(conn, e2, e3, r0_cache))
        m = linalg.mat_sub(m, endo_apply(
            conn, e2, curvature_matrix_R0(conn, e1, e3, r0_cache)))
        m = linalg.mat_add(m, endo_apply(
            conn, e3, curvature_matrix_R0(conn, e1, e2, r0_cache)))
        m = linalg.mat_sub(m, curvature_matrix_R0(
            conn, alg.bracket(e1, e2), e3, r0_cache))
        m = linalg.mat_sub(m, curvature_matrix_R0(
            conn, e2, alg.bracket(e1, e3), r0_cache))
        m = linalg.mat_add(m, curvature_matrix_R0(
            conn, e1, alg.bracket(e2, e3), r0_cache))
        if not linalg.mat_is_zero(m):
            fails.append((" , ".join(battery.describe((e1, e2, e3))), str(m)))
    report.add("degree-3-component", not fails, checked,
               *(fails[0] if fails else (None, None)))

    fails, checked = [], 0
    for (sigma,) in battery.section_tuples(1):
        for f in battery.functions:
            checked += 1
            m = curvature_matrix_R0(conn, alg.d_E(f), sigma, r0_cache)
            m = linalg.mat_add(m, endo_apply(conn, sigma,
                                             curvature_matrix_R1(conn, f)))
            if not linalg.mat_is_zero(m):
                fails.append((f"{battery.label(sigma)}, f={f}", str(m)))
    report.add("function-component", not fails, checked,
               *(fails[0] if fails else (None, None)))

    if dual_check:
        dual = dual_connection(conn)
        s = bundle.rank
        zero, one = Scalar.zero(alg.n), Scalar.one(alg.n)
        dual_frame = [tuple(one if i == j else zero for j in range(s))
                      for i in range(s)]
        fails, checked = [], 0
        for e1, e2 in battery.section_tuples(2, reduced=True):
            for i, beta in enumerate(dual_frame):
                r0s = dual.curvature_R0(e1, e2, beta)
                for b in b_elements[:: max(1, len(b_elements) // 4)]:
                    checked += 1
                    res = dual.dual_pair(r0s, b) + dual.dual_pair(
                        beta, curvature_R0(conn, e1, e2, b))
                    if not res.is_zero():
                        fails.append(
                            (f"{battery.label(e1)}, {battery.label(e2)}, "
                             f"beta={i}, b={b}", str(res)))
        report.add("dual-curvature-duality", not fails, checked,
                   *(fails[0] if fails else (None, None)))
    return report


# ---------------------------------------------------------------------------
# named constructions
# ---------------------------------------------------------------------------


def _self_predual(alg):
    """The algebroid as a predual of itself (pairing matrix, forced alpha).

    Cached per algebroid so connections built independently share a predual.
    """
    cached = alg.metadata.get("self_predual")
    if cached is None:
        a = linalg.mat_mul(alg._pairing_inv, linalg.mat_transpose(alg.anchor_matrix))
        cached = PredualBundle(alg, alg.rank, alg.pairing_matrix, a)
        alg.metadata["self_predual"] = cached
    return cached


def build_standard_connection(alg, christoffel=None):
    """Connection on the standard algebroid paired with itself, induced by a
    linear connection on the tangent frame together with its dual.

    christoffel[i][j][k] is the coefficient of tangent frame k in the
    derivative of tangent frame j along tangent direction i (any values
    work; flatness is not required).
    """
    n = alg.n
    if alg.rank != 2 * n:
        raise PreconditionError("expected a standard algebroid (rank = 2n)")
    zero = Scalar.zero(n)
    ch = christoffel
    if ch is None:
        ch = [[[zero] * n for _ in range(n)] for _ in range(n)]
    if len(ch) != n or any(len(row) != n for row in ch) or any(
            len(cell) != n for row in ch for cell in row):
        raise PreconditionError("christoffel data must be n x n x n")
    bundle = _self_predual(alg)
    r = alg.rank
    gamma = [[[zero] * r for _ in range(r)] for _ in range(r)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                # tangent block: the linear connection itself
                gamma[i][j][k] = ch[i][j][k]
                # cotangent frame differentiated along a cotangent direction
                # through the dual connection, contracted against the frame
                gamma[n + i][j][n + k] = -ch[k][j][i]
    return DorfmanConnection(bundle, gamma)


def build_port_hamiltonian_connections(alg):
    """The two projection connections of a port-Hamiltonian algebroid.

    Returns (conn, conn_prime) on the cotangent+port and cotangent+co-port
    preduals; both are projections of the bracket restricted to the
    respective sub-bundles.
    """
    meta = alg.metadata.get("port_hamiltonian")
    if meta is None:
        raise PreconditionError("algebroid does not carry port-Hamiltonian data")
    n, v, theta = meta["n"], meta["v"], meta["christoffel"]
    zero, one = Scalar.zero(n), Scalar.one(n)
    r = alg.rank
    s = n + v
    tan, cot, out, inn = 0, n, 2 * n, 2 * n + v

    # predual on cotangent + port frames
    p1 = [[zero] * r for _ in range(s)]
    for l in range(n):
        p1[l][tan + l] = one
    for a in range(v):
        p1[n + a][inn + a] = one
    a1 = [[one if col == i and i < n else zero for col in range(n)]
          for i in range(s)]
    bundle1 = PredualBundle(alg, s, p1, a1)
    g1 = [[[zero] * s for _ in range(s)] for _ in range(r)]
    for l in range(n):
        for a in range(v):
            for b in range(v):
                t = theta[l][a][b]
                if t.is_zero():
                    continue
                g1[tan + l][n + a][n + b] = t
                g1[inn + a][n + b][l] = g1[inn + a][n + b][l] - theta[l][b][a]
    conn1 = DorfmanConnection(bundle1, g1)

    # predual on cotangent + co-port frames
    p2 = [[zero] * r for _ in range(s)]
    for l in range(n):
        p2[l][tan + l] = one
    for a in range(v):
        p2[n + a][out + a] = one
    bundle2 = PredualBundle(alg, s, p2, a1)
    g2 = [[[zero] * s for _ in range(s)] for _ in range(r)]
    for l in range(n):
        for a in range(v):
            for b in range(v):
                t = theta[l][a][b]
                if t.is_zero():
                    continue
                g2[tan + l][n + b][n + a] = g2[tan + l][n + b][n + a] - t
                g2[out + a][n + b][l] = g2[out + a][n + b][l] + t
    conn2 = DorfmanConnection(bundle2, g2)
    return conn1, conn2


def bott_connection(alg, l_sections, battery_degree=2, extras=3, seed=0):
    """Quotient connection of an involutive Lagrangian subbundle.

    Verifies isotropy, rank and bracket-closure of the given spanning
    sections (with witnesses), builds the quotient predual over a
    deterministically chosen complement frame, and returns the flat
    connection given by bracketing and projecting.

    Returns (bundle, connection, report).
    """
    r = alg.rank
    half = r // 2
    if 2 * half != r or len(l_sections) != half:
        raise PreconditionError(
            f"need rank/2 = {r // 2} spanning sections, got {len(l_sections)}")
    for i, li in enumerate(l_sections):
        for j, lj in enumerate(l_sections):
            p = alg.pairing(li, lj)
            if not p.is_zero():
                raise PreconditionError(
                    f"not isotropic: pairing of sections {i + 1} and {j + 1} "
                    f"is {p}")
    comp_matrix = [list(l.components) for l in l_sections]
    if linalg.rank(comp_matrix) != half:
        raise PreconditionError("spanning sections are dependent over the "
                                "fraction field")
    # bracket closure, recording structure functions over the subframe
    span_t = linalg.mat_transpose(comp_matrix)
    struct = [[None] * half for _ in range(half)]
    for i in range(half):
        for j in range(half):
            br = alg.bracket(l_sections[i], l_sections[j])
            sol = linalg.solve(span_t, list(br.components))
            if sol is None:
                raise PreconditionError(
                    f"not involutive: bracket of sections {i + 1} and {j + 1} "
                    f"leaves the span, value {br}")
            struct[i][j] = sol
    # restricted structure on the subbundle (isotropic: zero pairing block)
    n = alg.n
    zero = Scalar.zero(n)
    sub_pairing = [[zero] * half for _ in range(half)]
    sub_anchor = [[alg._anchor_row(l_sections[j])[l] for j in range(half)]
                  for l in range(n)]
    sub_c = [[list(struct[i][j]) for j in range(half)] for i in range(half)]
    sub = CourantAlgebroid(n, half, sub_pairing, sub_anchor, sub_c,
                           _allow_degenerate=True)

    # deterministic greedy complement from the ambient frame
    chosen = []
    work = [list(l.components) for l in l_sections]
    for t in range(r):
        cand = work + [[alg.frame[t].components[c] for c in range(r)]]
        if linalg.rank(cand) > len(work):
            work = cand
            chosen.append(t)
        if len(chosen) == half:
            break
    if len(chosen) != half:
        raise PreconditionError("could not complete the subframe to a basis")
    basis = [list(l.components) for l in l_sections] + \
            [list(alg.frame[t].components) for t in chosen]
    basis_t = linalg.mat_transpose(basis)
    basis_inv = linalg.inverse(basis_t)

    # quotient predual data over the complement classes
    p_mat = [[alg.pairing(alg.frame[chosen[i]], l_sections[j])
              for j in range(half)] for i in range(half)]
    to_quotient = linalg.mat_mul(
        basis_inv, linalg.mat_mul(alg._pairing_inv,
                                  linalg.mat_transpose(alg.anchor_matrix)))
    a_mat = [row for row in to_quotient[half:]]
    bundle = PredualBundle(sub, half, p_mat, a_mat)

    gamma = []
    for i in range(half):
        rows = []
        for j in range(half):
            br = alg.bracket(l_sections[i], alg.frame[chosen[j]])
            coords = linalg.mat_vec(basis_inv, list(br.components))
            rows.append(coords[half:])
        gamma.append(rows)
    conn = DorfmanConnection(bundle, gamma)

    battery = Battery(sub, degree=battery_degree, extras=extras, seed=seed)
    report = Report("quotient connection of the subbundle")
    report.extend(verify_connection(conn, battery))
    bs = bundle.test_elements(degree=battery_degree, extras=extras, seed=seed)
    fails, checked = [], 0
    for s1, s2 in battery.section_tuples(2):
        for b in bs[:: max(1, len(bs) // 6)]:
            checked += 1
            res = curvature_R0(conn, s1, s2, b)
            if not res.is_zero():
                fails.append(
                    (f"{battery.label(s1)}, {battery.label(s2)}, b={b}", str(res)))
    report.add("curvature-vanishes", not fails, checked,
               *(fails[0] if fails else (None, None)))
    # the isotropic restriction has no pairing-dual differential, so the
    # function component of the curvature is empty; record it as trivial
    report.add("function-curvature-trivial", True, 0)
    return bundle, conn, report


# ---------------------------------------------------------------------------
# JSON formats
# ---------------------------------------------------------------------------


def predual_from_json(alg, doc):
    """{ "rank": s, "pairing_P": [[scalar-string]], "alpha_A": [[scalar-string]] }"""
    try:
        s = int(doc["rank"])
        p_rows = doc["pairing_P"]
        a_rows = doc["alpha_A"]
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed predual document: {exc}") from exc
    n = alg.n
    p = [[parse_scalar(x, n) for x in row] for row in p_rows]
    a = [[parse_scalar(x, n) for x in row] for row in a_rows]
    return PredualBundle(alg, s, p, a)


def connection_from_json(bundle, doc):
    """{ "gamma": { "i,j": [scalar-string x s] } } with 1-based indices."""
    n = bundle.alg.n
    r, s = bundle.alg.rank, bundle.rank
    zero = Scalar.zero(n)
    gamma = [[[zero] * s for _ in range(s)] for _ in range(r)]
    for key, comps in doc.get("gamma", {}).items():
        try:
            i_s, j_s = key.split(",")
            i, j = int(i_s) - 1, int(j_s) - 1
        except ValueError as exc:
            raise PreconditionError(f"bad gamma key {key!r}") from exc
        if not (0 <= i < r and 0 <= j < s) or len(comps) != s:
            raise PreconditionError(f"gamma entry {key!r} out of shape")
        gamma[i][j] = [parse_scalar(x, n) for x in comps]
    return DorfmanConnection(bundle, gamma)


def connection_to_json(conn):
    gamma = {}
    for i, row in enumerate(conn.gamma):
        for j, cell in enumerate(row):
            if any(not x.is_zero() for x in cell):
                gamma[f"{i + 1},{j + 1}"] = [str(x) for x in cell]
    return {"gamma": gamma}


def dirac_from_json(alg, doc):
    """{ "frame": [[scalar-string x r] x r/2] } spanning sections."""
    try:
        rows = doc["frame"]
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"malformed dirac document: {exc}") from exc
    return [alg.section_from_strings(row) for row in rows]


def christoffel_from_json(doc, n, size=None):
    """{ "gamma": { "i,j": [scalar-string x size] } }, 1-based, zero default."""
    if size is None:
        size = n
    zero = Scalar.zero(n)
    ch = [[[zero] * size for _ in range(size)] for _ in range(n)]
    for key, comps in doc.get("gamma", {}).items():
        try:
            i_s, j_s = key.split(",")
            i, j = int(i_s) - 1, int(j_s) - 1
        except ValueError as exc:
            raise PreconditionError(f"bad christoffel key {key!r}") from exc
        if not (0 <= i < n and 0 <= j < size) or len(comps) != size:
            raise PreconditionError(f"christoffel entry {key!r} out of shape")
        ch[i][j] = [parse_scalar(x, n) for x in comps]
    return ch
