"""Deterministic batteries of test sections and functions.

Identity checks in this package are exact but battery-relative: an identity
whose sides are differential operators of bounded order with rational
coefficients is checked on (a) all tuples of frame sections, (b) per-slot
probes where one argument is a frame section scaled by a monomial while the
other slots cycle through the frame, and (c) seeded random polynomial
sections taken jointly in all slots.  A fixed (degree, extras, seed) triple
fully determines every tuple, so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .algebroid import Section
from .scalar import Scalar, monomials_up_to

__all__ = ["Battery"]


class Battery:
    """Test data attached to one algebroid.

    degree  -- monomial degree cap D for scaled frame sections; battery
               functions are all monomials of degree <= D + 1.
    extras  -- number of seeded random polynomial sections and functions.
    seed    -- seed for the random extras.
    """

    def __init__(self, alg, degree=2, extras=3, seed=0,
                 frame_cap=4096, joint_cap=256):
        self.alg = alg
        self.degree = degree
        self.extras = extras
        self.seed = seed
        self.frame_cap = frame_cap
        self.joint_cap = joint_cap
        n, r = alg.n, alg.rank
        self._labels = {}

        self.frame = []
        for i, e in enumerate(alg.frame):
            self.frame.append(e)
            self._labels[e] = f"e{i + 1}"

        self.scaled = []
        for mono in monomials_up_to(n, degree):
            if not any(mono):
                continue
            m = Scalar.monomial(n, mono)
            for i, e in enumerate(alg.frame):
                s = e.scale(m)
                self.scaled.append(s)
                self._labels[s] = f"{m}*e{i + 1}"

        rng = random.Random(f"battery:{seed}:{n}:{r}:{degree}")
        self.randoms = []
        for t in range(extras):
            comps = [_random_poly(rng, n, min(2, max(degree, 1)))
                     for _ in range(r)]
            s = Section(alg, comps)
            self.randoms.append(s)
            self._labels[s] = f"rnd{t + 1}"

        self.sections = self.frame + self.scaled + self.randoms

        self.functions = [Scalar.monomial(n, mono)
                          for mono in monomials_up_to(n, degree + 1)]
        for t in range(extras):
            self.functions.append(_random_poly(rng, n, min(2, max(degree, 1))))
        # small core used for multi-slot function tuples
        core = [Scalar.variable(n, i + 1) for i in range(min(n, 2))]
        if n >= 1:
            core.append(Scalar.variable(n, 1) ** 2)
        if n >= 2:
            core.append(Scalar.variable(n, 1) * Scalar.variable(n, 2))
        if not core:
            core = [Scalar.const(0, 1), Scalar.const(0, Fraction(1, 2))]
        self.core_functions = core

    # -- labels ---------------------------------------------------------------

    def label(self, obj):
        return self._labels.get(obj, str(obj))

    def describe(self, objs):
        return tuple(self.label(o) for o in objs)

    # -- tuple streams ----------------------------------------------------------

    def section_tuples(self, arity, reduced=False):
        """Deterministic stream of section argument tuples, deduplicated."""
        if arity == 0:
            yield ()
            return
        seen = set()

        def emit(t):
            if t not in seen:
                seen.add(t)
                return True
            return False

        r = len(self.frame)
        if not reduced and r**arity <= self.frame_cap:
            for t in product(self.frame, repeat=arity):
                if emit(t):
                    yield t
        else:
            c = max(2, int(self.frame_cap ** (1.0 / arity))) if not reduced else 2
            for t in product(self.frame[: min(c, r)], repeat=arity):
                if emit(t):
                    yield t
            for j in range(r):
                t = tuple(self.frame[(j + k) % r] for k in range(arity))
                if emit(t):
                    yield t
                t = tuple(self.frame[(j - k) % r] for k in range(arity))
                if emit(t):
                    yield t
        scaled = self.scaled if not reduced else self.scaled[::2]
        for slot in range(arity):
            for idx, s in enumerate(scaled):
                base = idx % r
                fwd = [self.frame[(base + 1 + k) % r] for k in range(arity)]
                rev = [self.frame[(base - 1 - k) % r] for k in range(arity)]
                for fill in (fwd, rev):
                    t = tuple(fill[:slot] + [s] + fill[slot + 1 : arity])
                    if emit(t):
                        yield t
        m = len(self.randoms)
        for shift in range(m):
            t = tuple(self.randoms[(shift + k) % m] for k in range(arity))
            if emit(t):
                yield t
            mixed = tuple([self.randoms[shift]]
                          + [self.frame[(shift + 1 + k) % r] for k in range(arity - 1)])
            if emit(mixed):
                yield mixed

    def function_tuples(self, arity):
        if arity == 0:
            yield ()
            return
        seen = set()
        core = self.core_functions
        if len(core) ** arity <= self.joint_cap:
            for t in product(core, repeat=arity):
                if t not in seen:
                    seen.add(t)
                    yield t
        m = len(self.functions)
        for shift in range(m):
            t = tuple(self.functions[(shift + k) % m] for k in range(arity))
            if t not in seen:
                seen.add(t)
                yield t

    def eval_tuples(self, sec_arity, fun_arity):
        """Argument stream for one component of a cochain identity."""
        if fun_arity == 0:
            for secs in self.section_tuples(sec_arity):
                yield secs, ()
            return
        fun_tuples = list(self.function_tuples(fun_arity))
        for secs in self.section_tuples(sec_arity, reduced=True):
            for funs in fun_tuples:
                yield secs, funs

    def pairs(self):
        return self.section_tuples(2)

    def triples(self):
        return self.section_tuples(3)


def _random_poly(rng, n, degree):
    terms = {}
    for mono in monomials_up_to(n, degree):
        p = rng.randint(-3, 3)
        if p:
            terms[mono] = Fraction(p, rng.choice((1, 1, 2)))
    return Scalar(n, terms, _canonical=True)
