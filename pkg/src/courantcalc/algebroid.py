"""Frame-based Courant algebroids on a coordinate patch.

A :class:`CourantAlgebroid` is given by structure data over the scalar ring
in n base variables: a symmetric pairing matrix on the rank-r frame, an
anchor matrix, and bracket structure functions.  The bracket and the map
taking a function to its pairing-dual differential are extended to arbitrary
sections by the Leibniz rules, and :func:`verify_axioms` checks the defining
identities exactly on a battery of test sections and functions.

All indices in the Python API are 0-based; the JSON file format uses
1-based indices ("i,j" keys) and the x1..xn text syntax.
"""

from __future__ import annotations

from . import linalg
from .report import PreconditionError, Report
from .scalar import Scalar, parse_scalar

__all__ = [
    "Section",
    "CourantAlgebroid",
    "verify_axioms",
    "build_standard",
    "build_quadratic_lie_algebra",
    "build_from_structure_data",
    "build_port_hamiltonian",
    "algebroid_from_json",
    "algebroid_to_json",
]


class Section:
    """Element of the section module, as a component vector over the frame."""

    __slots__ = ("alg", "components", "_hash")

    def __init__(self, alg, components):
        components = tuple(components)
        if len(components) != alg.rank:
            raise PreconditionError(
                f"section has {len(components)} components, rank is {alg.rank}")
        self.alg = alg
        self.components = components
        self._hash = None

    def __add__(self, other):
        self.alg._same(other.alg)
        return Section(self.alg, tuple(a + b for a, b in
                                       zip(self.components, other.components)))

    def __sub__(self, other):
        self.alg._same(other.alg)
        return Section(self.alg, tuple(a - b for a, b in
                                       zip(self.components, other.components)))

    def __neg__(self):
        return Section(self.alg, tuple(-a for a in self.components))

    def scale(self, f):
        if f.is_zero():
            return self.alg.zero_section()
        return Section(self.alg, tuple(f * a for a in self.components))

    def is_zero(self):
        return all(a.is_zero() for a in self.components)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Section):
            return NotImplemented
        return self.alg is other.alg and self.components == other.components

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((id(self.alg), self.components))
            self._hash = h
        return h

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"Section{self}"


class CourantAlgebroid:
    """Courant algebroid structure data on a trivialized patch.

    Fields: base dimension ``n``, frame rank ``rank``, an r x r symmetric
    ``pairing_matrix`` with constant nonzero determinant, an n x r
    ``anchor_matrix`` (column j holds the coefficients of the anchor image of
    frame section j), and ``bracket_coeffs[i][j]`` giving the frame bracket
    of sections i and j as an r-vector of scalars.
    """

    def __init__(self, n, rank, pairing_matrix, anchor_matrix, bracket_coeffs,
                 _allow_degenerate=False):
        self.n = n
        self.rank = rank
        if len(pairing_matrix) != rank or any(len(row) != rank for row in pairing_matrix):
            raise PreconditionError("pairing matrix must be rank x rank")
        if len(anchor_matrix) != n or any(len(row) != rank for row in anchor_matrix):
            raise PreconditionError("anchor matrix must be n x rank")
        if len(bracket_coeffs) != rank or any(
                len(row) != rank for row in bracket_coeffs) or any(
                len(cell) != rank for row in bracket_coeffs for cell in row):
            raise PreconditionError("bracket coefficients must be rank x rank x rank")
        for i in range(rank):
            for j in range(rank):
                if pairing_matrix[i][j] != pairing_matrix[j][i]:
                    raise PreconditionError(
                        f"pairing matrix not symmetric at ({i}, {j})")
        self.pairing_matrix = [list(row) for row in pairing_matrix]
        self.anchor_matrix = [list(row) for row in anchor_matrix]
        self.bracket_coeffs = [[list(cell) for cell in row] for row in bracket_coeffs]
        self.degenerate = False
        if _allow_degenerate and linalg.det(self.pairing_matrix).is_zero():
            self.degenerate = True
            self._pairing_inv = None
        else:
            d = linalg.det(self.pairing_matrix)
            if d.is_zero() or not d.is_constant():
                raise PreconditionError(
                    f"pairing determinant must be a nonzero constant, got {d}")
            self._pairing_inv = linalg.inverse(self.pairing_matrix)
        self._frame = tuple(
            Section(self, tuple(Scalar.one(n) if k == i else Scalar.zero(n)
                                for k in range(rank)))
            for i in range(rank))
        self._frame_brackets = tuple(
            Section(self, tuple(self.bracket_coeffs[i][j]))
            for i in range(rank) for j in range(rank))
        self._zero = Section(self, tuple(Scalar.zero(n) for _ in range(rank)))
        self._bracket_cache = {}
        self._pairing_cache = {}
        self._anchor_rows = {}
        self._dE_cache = {}
        self.metadata = {}

    def _same(self, other):
        if other is not self:
            raise PreconditionError("sections belong to different algebroids")

    # -- sections -----------------------------------------------------------

    def section(self, components):
        return Section(self, components)

    def section_from_strings(self, strings):
        return Section(self, tuple(parse_scalar(s, self.n) for s in strings))

    def frame_section(self, i):
        return self._frame[i]

    @property
    def frame(self):
        return self._frame

    def zero_section(self):
        return self._zero

    # -- structural operations ------------------------------------------------

    def pairing(self, sigma, tau):
        """The symmetric pairing of two sections."""
        self._same(sigma.alg)
        self._same(tau.alg)
        key = (sigma, tau)
        cached = self._pairing_cache.get(key)
        if cached is not None:
            return cached
        g, h = sigma.components, tau.components
        total = Scalar.zero(self.n)
        for i in range(self.rank):
            if g[i].is_zero():
                continue
            row = self.pairing_matrix[i]
            for j in range(self.rank):
                if not (row[j].is_zero() or h[j].is_zero()):
                    total = total + g[i] * row[j] * h[j]
        self._pairing_cache[key] = total
        return total

    def _anchor_row(self, sigma):
        """Coefficients of the anchor image of sigma as a vector field."""
        row = self._anchor_rows.get(sigma)
        if row is None:
            g = sigma.components
            row = []
            for l in range(self.n):
                acc = Scalar.zero(self.n)
                for j in range(self.rank):
                    a = self.anchor_matrix[l][j]
                    if not (a.is_zero() or g[j].is_zero()):
                        acc = acc + g[j] * a
                row.append(acc)
            row = tuple(row)
            self._anchor_rows[sigma] = row
        return row

    def anchor_apply(self, sigma, f):
        """Derivative of f along the anchor image of sigma."""
        self._same(sigma.alg)
        row = self._anchor_row(sigma)
        total = Scalar.zero(self.n)
        for l in range(self.n):
            if row[l].is_zero():
                continue
            df = f.partial(l + 1)
            if not df.is_zero():
                total = total + row[l] * df
        return total

    def d_E(self, f):
        """Section dual to df: the unique one pairing to anchor_apply(., f)."""
        if self.degenerate:
            raise PreconditionError("no pairing-dual differential: pairing is degenerate")
        cached = self._dE_cache.get(f)
        if cached is not None:
            return cached
        grad = [f.partial(l + 1) for l in range(self.n)]
        comps = []
        for k in range(self.rank):
            acc = Scalar.zero(self.n)
            for j in range(self.rank):
                gij = self._pairing_inv[k][j]
                if gij.is_zero():
                    continue
                for l in range(self.n):
                    a = self.anchor_matrix[l][j]
                    if not (a.is_zero() or grad[l].is_zero()):
                        acc = acc + gij * a * grad[l]
            comps.append(acc)
        result = Section(self, tuple(comps))
        self._dE_cache[f] = result
        return result

    def bracket(self, sigma, tau):
        """Non-skew bracket, extended from the frame by the Leibniz rules."""
        self._same(sigma.alg)
        self._same(tau.alg)
        key = (sigma, tau)
        cached = self._bracket_cache.get(key)
        if cached is not None:
            return cached
        g, h = sigma.components, tau.components
        n, r = self.n, self.rank
        out = [Scalar.zero(n) for _ in range(r)]
        rho_sigma = self._anchor_row(sigma)
        rho_tau = self._anchor_row(tau)
        for k in range(r):
            acc = out[k]
            # structure-function part
            for i in range(r):
                if g[i].is_zero():
                    continue
                ci = self.bracket_coeffs[i]
                for j in range(r):
                    c = ci[j][k]
                    if not (c.is_zero() or h[j].is_zero()):
                        acc = acc + g[i] * h[j] * c
            # derivative of the right components along the anchor of sigma
            for l in range(n):
                if rho_sigma[l].is_zero():
                    continue
                d = h[k].partial(l + 1)
                if not d.is_zero():
                    acc = acc + rho_sigma[l] * d
            # derivative of the left components along the anchor of tau
            for l in range(n):
                if rho_tau[l].is_zero():
                    continue
                d = g[k].partial(l + 1)
                if not d.is_zero():
                    acc = acc - rho_tau[l] * d
            out[k] = acc
        # pairing term with the dual differential of the left components
        if not self.degenerate:
            for i in range(r):
                if g[i].is_zero() or g[i].is_constant():
                    continue
                coeff = Scalar.zero(n)
                for j in range(r):
                    p = self.pairing_matrix[i][j]
                    if not (p.is_zero() or h[j].is_zero()):
                        coeff = coeff + h[j] * p
                if coeff.is_zero():
                    continue
                de = self.d_E(g[i])
                for k in range(r):
                    if not de.components[k].is_zero():
                        out[k] = out[k] + coeff * de.components[k]
        result = Section(self, tuple(out))
        self._bracket_cache[key] = result
        return result

    def __repr__(self):
        return f"CourantAlgebroid(n={self.n}, rank={self.rank})"


# ---------------------------------------------------------------------------
# axiom verification
# ---------------------------------------------------------------------------


def verify_axioms(alg, battery):
    """Exact check of the defining axioms and derived identities.

    Failures are reported, not raised; the report carries the first
    counterexample tuple and its residual for every failed identity.
    """
    report = Report(f"axioms of {alg!r}")
    zero = Scalar.zero(alg.n)

    def run(name, arity, residual_fn, with_function=False):
        checked = 0
        witness = residual = None
        passed = True
        for secs in battery.section_tuples(arity):
            if with_function:
                for f in battery.functions:
                    checked += 1
                    res = residual_fn(*secs, f)
                    if passed and not _vanishes(res, zero):
                        passed = False
                        witness = battery.describe(secs) + (f" ; f={f}",)
                        residual = str(res)
            else:
                checked += 1
                res = residual_fn(*secs)
                if passed and not _vanishes(res, zero):
                    passed = False
                    witness = battery.describe(secs)
                    residual = str(res)
        report.add(name, passed, checked,
                   None if passed else " , ".join(witness), residual)

    br, pr, rho = alg.bracket, alg.pairing, alg.anchor_apply

    def jacobi(a, b, c):
        return br(a, br(b, c)) - br(br(a, b), c) - br(b, br(a, c))

    def compatibility(a, b, c):
        return pr(br(a, b), c) + pr(b, br(a, c)) - rho(a, pr(b, c))

    def symmetric_part(a, b):
        return br(a, b) + br(b, a) - alg.d_E(pr(a, b))

    def anchor_morphism(a, b, f):
        return rho(br(a, b), f) - rho(a, rho(b, f)) + rho(b, rho(a, f))

    def right_leibniz(a, b, f):
        return br(a, b.scale(f)) - br(a, b).scale(f) - b.scale(rho(a, f))

    def left_leibniz(a, b, f):
        return (br(a.scale(f), b) - br(a, b).scale(f) + a.scale(rho(b, f))
                - alg.d_E(f).scale(pr(a, b)))

    def bracket_dual_right(a, f):
        # one-form identities probed on exact arguments: bracketing a dual
        # differential from the right returns the dual differential of the
        # anchor derivative
        return br(a, alg.d_E(f)) - alg.d_E(rho(a, f))

    def bracket_dual_left(a, f):
        # and from the left it vanishes
        return br(alg.d_E(f), a)

    run("jacobi-leibniz", 3, jacobi)
    run("pairing-compatibility", 3, compatibility)
    run("symmetric-part-is-dual-differential", 2, symmetric_part)
    run("anchor-homomorphism", 2, anchor_morphism, with_function=True)
    run("right-leibniz", 2, right_leibniz, with_function=True)
    run("left-leibniz", 2, left_leibniz, with_function=True)
    run("bracket-with-dual-differential-right", 1, bracket_dual_right,
        with_function=True)
    run("bracket-with-dual-differential-left", 1, bracket_dual_left,
        with_function=True)

    # anchor composed with its pairing-dual vanishes, as a matrix identity
    ginv_rt = linalg.mat_mul(alg._pairing_inv, linalg.mat_transpose(alg.anchor_matrix))
    prod = linalg.mat_mul(alg.anchor_matrix, ginv_rt)
    ok = linalg.mat_is_zero(prod)
    report.add("anchor-isotropy-matrix-identity", ok, 1,
               None if ok else "anchor . pairing_inv . anchor^T",
               None if ok else str(prod))

    # defining property of the dual differential on battery data
    checked = 0
    passed = True
    witness = residual = None
    for (sec,) in battery.section_tuples(1):
        for f in battery.functions:
            checked += 1
            res = pr(alg.d_E(f), sec) - rho(sec, f)
            if passed and not res.is_zero():
                passed = False
                witness = battery.describe((sec,)) + (f"f={f}",)
                residual = str(res)
    report.add("dual-differential-defining-property", passed, checked,
               None if passed else " , ".join(witness), residual)
    return report


def _vanishes(res, zero):
    if isinstance(res, Section):
        return res.is_zero()
    return res == zero or res.is_zero()


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def build_standard(n):
    """Standard structure on the sum of the tangent and cotangent frames.

    Frame order: d/dx1..d/dxn, dx1..dxn.  The pairing couples the two
    blocks, the anchor projects on the first, and coordinate-frame brackets
    vanish.
    """
    if n < 1:
        raise PreconditionError("base dimension must be >= 1")
    r = 2 * n
    zero, one = Scalar.zero(n), Scalar.one(n)
    pairing = [[one if abs(i - j) == n else zero for j in range(r)] for i in range(r)]
    anchor = [[one if j == l else zero for j in range(r)] for l in range(n)]
    c = [[[zero] * r for _ in range(r)] for _ in range(r)]
    return CourantAlgebroid(n, r, pairing, anchor, c)


def build_quadratic_lie_algebra(c, pairing):
    """Courant algebroid over a point from structure constants and a form.

    ``c[i][j][k]`` are rational structure constants, antisymmetric in (i, j);
    ``pairing`` is a rational symmetric matrix.  Construction only enforces
    antisymmetry and shapes; run :func:`verify_axioms` for the Jacobi
    identity and the invariance of the form.
    """
    r = len(c)
    coeffs = [[[Scalar.const(0, v) for v in cell] for cell in row] for row in c]
    for i in range(r):
        for j in range(r):
            for k in range(r):
                if coeffs[i][j][k] != -coeffs[j][i][k]:
                    raise PreconditionError(
                        f"structure constants not antisymmetric at ({i}, {j}, {k})")
    g = [[Scalar.const(0, v) for v in row] for row in pairing]
    return CourantAlgebroid(0, r, g, [], coeffs)


def build_from_structure_data(n, rank, pairing, anchor, bracket):
    """Generic loader: construct without verifying; caller runs verify_axioms."""
    return CourantAlgebroid(n, rank, pairing, anchor, bracket)


def build_port_hamiltonian(n, v, christoffel=None):
    """Structure on tangent + cotangent + port + co-port frames.

    ``christoffel[i][a][b]`` gives the coefficient of port frame b in the
    covariant derivative of port frame a along d/dx(i+1); the induced linear
    connection on the port bundle must be flat (checked exactly; for n = 1
    this is automatic).  Frame order: d/dx1..d/dxn, dx1..dxn, ports, co-ports.
    """
    if n < 1 or v < 1:
        raise PreconditionError("need base dimension >= 1 and port rank >= 1")
    zero, one = Scalar.zero(n), Scalar.one(n)
    theta = christoffel
    if theta is None:
        theta = [[[zero] * v for _ in range(v)] for _ in range(n)]
    if len(theta) != n or any(len(row) != v for row in theta) or any(
            len(cell) != v for row in theta for cell in row):
        raise PreconditionError("christoffel data must be n x v x v")
    # flatness of the port connection: classical curvature must vanish
    for i in range(n):
        for j in range(i + 1, n):
            for a in range(v):
                for b in range(v):
                    res = theta[j][a][b].partial(i + 1) - theta[i][a][b].partial(j + 1)
                    for cidx in range(v):
                        res = res + theta[j][a][cidx] * theta[i][cidx][b]
                        res = res - theta[i][a][cidx] * theta[j][cidx][b]
                    if not res.is_zero():
                        raise PreconditionError(
                            "port connection is not flat: curvature residual "
                            f"{res} on (dx{i + 1}, dx{j + 1}, port {a + 1}, port {b + 1})")
    r = 2 * n + 2 * v
    tan, cot, out, inn = 0, n, 2 * n, 2 * n + v

    pairing = [[zero] * r for _ in range(r)]
    for l in range(n):
        pairing[tan + l][cot + l] = one
        pairing[cot + l][tan + l] = one
    for a in range(v):
        pairing[out + a][inn + a] = one
        pairing[inn + a][out + a] = one
    anchor = [[one if j == tan + l else zero for j in range(r)] for l in range(n)]

    c = [[[zero] * r for _ in range(r)] for _ in range(r)]

    def add(i, j, k, val):
        c[i][j][k] = c[i][j][k] + val

    for l in range(n):
        for a in range(v):
            for b in range(v):
                t = theta[l][a][b]
                if t.is_zero():
                    continue
                # covariant derivative of ports along coordinate directions
                add(tan + l, out + a, out + b, t)
                add(out + a, tan + l, out + b, -t)
                # dual connection on co-ports
                add(tan + l, inn + b, inn + a, -t)
                add(inn + b, tan + l, inn + a, t)
                # cross terms landing in the cotangent block
                add(out + a, inn + b, cot + l, t)
                add(inn + b, out + a, cot + l, -t)
    alg = CourantAlgebroid(n, r, pairing, anchor, c)
    alg.metadata["port_hamiltonian"] = {"n": n, "v": v, "christoffel": theta}
    return alg


# ---------------------------------------------------------------------------
# JSON format
# ---------------------------------------------------------------------------


def algebroid_to_json(alg):
    """Dump structure data to the algebroid.json schema (1-based indices)."""
    doc = {
        "n": alg.n,
        "rank": alg.rank,
        "pairing": [[str(x) for x in row] for row in alg.pairing_matrix],
        "anchor": [[str(x) for x in row] for row in alg.anchor_matrix],
        "bracket": {},
    }
    for i in range(alg.rank):
        for j in range(alg.rank):
            cell = alg.bracket_coeffs[i][j]
            if any(not x.is_zero() for x in cell):
                doc["bracket"][f"{i + 1},{j + 1}"] = [str(x) for x in cell]
    return doc


def algebroid_from_json(doc):
    """Build from the algebroid.json document.

    Schema: { "n": int, "rank": int, "pairing": [[scalar-string]],
    "anchor": [[scalar-string]], "bracket": { "i,j": [scalar-string x r] } }
    with 1-based frame indices; omitted bracket keys mean zero.
    """
    try:
        n = int(doc["n"])
        r = int(doc["rank"])
        pairing_rows = doc["pairing"]
        anchor_rows = doc.get("anchor", [])
        bracket_map = doc.get("bracket", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed algebroid document: {exc}") from exc
    pairing = [[parse_scalar(s, n) for s in row] for row in pairing_rows]
    anchor = [[parse_scalar(s, n) for s in row] for row in anchor_rows]
    zero = Scalar.zero(n)
    bracket = [[[zero] * r for _ in range(r)] for _ in range(r)]
    for key, comps in bracket_map.items():
        try:
            i_s, j_s = key.split(",")
            i, j = int(i_s) - 1, int(j_s) - 1
        except ValueError as exc:
            raise PreconditionError(f"bad bracket key {key!r}") from exc
        if not (0 <= i < r and 0 <= j < r) or len(comps) != r:
            raise PreconditionError(f"bracket entry {key!r} out of shape")
        bracket[i][j] = [parse_scalar(s, n) for s in comps]
    return build_from_structure_data(n, r, pairing, anchor, bracket)
