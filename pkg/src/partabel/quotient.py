"""Filtered ideal-span engine for quotients of k^3 * k^3 by a commutator
relation, with certified dimension bounds.

Given x in P^3 the relation is X = sum x_ij [p_i, q_j].  The engine spans
the two-sided ideal I(X) degree by degree with products u*X*v, echelonizes
with the highest word in the graded order eliminated first, and reads off:

* counted rank at degree n -- independent ideal elements supported in
  F^n, a certified lower bound on dim(I(X) ^ F^n R);
* quotient bound at degree n -- dim F^n R minus the counted rank, a
  certified upper bound on dim F^n S_x;
* a closure certificate -- a monomial basis B whose products with the four
  generators reduce back into span(B), certifying |B| as an upper bound for
  dim S_x in all degrees at once.

Degree drops are the whole point: a product of formal degree up to
window+2 may collapse into low degree after elimination, which is how the
degree-5 words fall into F^4 at generic points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .freeproduct import (
    EMPTY_WORD, P, Q, AlgebraElement, Signature, Word,
    commutator, concat_words, filtration_dim, idempotent, word_str, words_up_to,
)
from .linalg import SparseEchelon
from .scalars import (
    Domain, DegenerateSpecialization, FunctionField, PrimeField, QQ,
    RationalFunction,
)

GENERATORS: tuple[Word, ...] = (((P, 1),), ((P, 2),), ((Q, 1),), ((Q, 2),))

DEGREE4_PIVOT_PQ: Word = ((P, 2), (Q, 1), (P, 1), (Q, 1))
DEGREE4_PIVOT_QP: Word = ((Q, 2), (P, 1), (Q, 1), (P, 1))

# 19 monomials spanning F^4 of the generic quotient (one linear dependence
# among them); kept as a reference list whose rank inside the computed basis
# is checked, never assumed.
SPANNING_MONOMIALS_DEGREE4: tuple[str, ...] = (
    "1", "p1", "p2", "q1", "q2",
    "p1.q2", "p2.q1", "p2.q2", "q1.p1", "q1.p2", "q2.p1", "q2.p2",
    "p2.q1.p2", "p2.q2.p1", "q1.p1.q1", "q1.p2.q2", "q2.p2.q2",
    "p2.q1.p1.q1", "q2.p1.q1.p1",
)


class ClosureFailure(RuntimeError):
    """Raised when no multiplication-closed monomial basis was certified;
    carries a suggestion to increase n_max or slack."""

    def __init__(self, message: str, leaks: list | None = None):
        super().__init__(message)
        self.leaks = leaks or []


@dataclass(frozen=True)
class CommutatorRelation:
    """The element X = sum x_ij [p_i, q_j] attached to a point of P^3."""

    sig: Signature
    field: Domain
    point: tuple
    element: AlgebraElement

    def on_quadric(self) -> bool:
        f = self.field
        x11, x12, x21, x22 = self.point
        return f.eq(f.mul(x11, x22), f.mul(x12, x21))


def canonical_point(field: Domain, coords) -> tuple:
    """Scale homogeneous coordinates so the first nonzero one equals 1."""
    coords = tuple(coords)
    for c in coords:
        if not field.is_zero(c):
            inv = field.inv(c)
            return tuple(field.mul(x, inv) for x in coords)
    raise ValueError("zero point is not a point of P^3")


def make_relation(field: Domain, point=None, chart=None,
                  sig: Signature = Signature(3, 3)) -> CommutatorRelation:
    """Assemble X for a point (x11:x12:x21:x22) or a chart triple
    (y1, y2, y3) standing for (1:y1:y2:y3)."""
    if chart is not None:
        if point is not None:
            raise ValueError("give either a point or a chart triple")
        y1, y2, y3 = chart
        point = (field.one, y1, y2, y3)
    point = canonical_point(field, point)
    x11, x12, x21, x22 = point
    p1 = idempotent(sig, field, P, 1)
    p2 = idempotent(sig, field, P, 2)
    q1 = idempotent(sig, field, Q, 1)
    q2 = idempotent(sig, field, Q, 2)
    X = (commutator(p1, q1).scale(x11) + commutator(p1, q2).scale(x12)
         + commutator(p2, q1).scale(x21) + commutator(p2, q2).scale(x22))
    if X.is_zero():
        raise ValueError("relation vanished; zero point?")
    return CommutatorRelation(sig, field, point, X)


class IdealSpan:
    """Echelonized span of products u * X_k * v, grown window by window.

    ``window`` caps len(u) + len(v); expanded products then live in degree
    up to window + 2 and the highest-order columns are eliminated first, so
    collapses into low degree are discovered and counted.  Deterministic:
    products are fed in graded lexicographic order.
    """

    def __init__(self, relations, track_provenance: bool = False):
        if isinstance(relations, CommutatorRelation):
            relations = [relations.element]
        self.relations: list[AlgebraElement] = list(relations)
        if not self.relations:
            raise ValueError("need at least one relation element")
        first = self.relations[0]
        self.sig = first.sig
        self.field = first.field
        self.ech = SparseEchelon(self.field)
        self.words: list[Word] = []
        self.index: dict[Word, int] = {}
        self.window = -1
        self.pivot_deg_counts: dict[int, int] = {}
        self.track = track_provenance
        self.products: list[tuple[Word, AlgebraElement, Word]] = []

    def _ensure_columns(self, max_degree: int):
        if self.words and len(self.words[-1]) >= max_degree:
            return
        full = words_up_to(self.sig, max_degree)
        assert full[: len(self.words)] == self.words
        for w in full[len(self.words):]:
            self.index[w] = len(self.words)
            self.words.append(w)

    def extend_to_window(self, window: int):
        if window <= self.window:
            return
        maxrel = max(r.degree() for r in self.relations)
        self._ensure_columns(window + maxrel)
        from .freeproduct import words_of_length
        for s in range(self.window + 1, window + 1):
            for lu in range(s + 1):
                lv = s - lu
                us = sorted(words_of_length(self.sig, lu))
                vs = sorted(words_of_length(self.sig, lv))
                for u in us:
                    for v in vs:
                        for X in self.relations:
                            self._feed(u, X, v)
        self.window = window

    def _feed(self, u: Word, X: AlgebraElement, v: Word):
        f = self.field
        row: dict[int, object] = {}
        for w, c in X.terms.items():
            w1 = concat_words(u, w)
            if w1 is None:
                continue
            w2 = concat_words(w1, v)
            if w2 is None:
                continue
            i = self.index[w2]
            s = f.add(row.get(i, f.zero), c)
            if f.is_zero(s):
                row.pop(i, None)
            else:
                row[i] = s
        if not row:
            return
        if self.track:
            pid = len(self.products)
            self.products.append((u, X, v))
            row[-(pid + 1)] = f.one
        piv = self.ech.add_row(row)
        if piv is not None and piv >= 0:
            d = len(self.words[piv])
            self.pivot_deg_counts[d] = self.pivot_deg_counts.get(d, 0) + 1

    # -- bounds --------------------------------------------------------------

    def counted_rank(self, n: int) -> int:
        return sum(c for d, c in self.pivot_deg_counts.items() if d <= n)

    def bound(self, n: int) -> int:
        return filtration_dim(self.sig, n) - self.counted_rank(n)

    # -- normal forms ----------------------------------------------------------

    def normal_forms(self, max_degree: int) -> dict[int, dict[int, object]]:
        """Normal form of every word of degree <= max_degree: a vector over
        non-pivot word indices, computed bottom-up in the word order."""
        f = self.field
        self._ensure_columns(max_degree)
        nf: dict[int, dict[int, object]] = {}
        for i, w in enumerate(self.words):
            if len(w) > max_degree:
                break
            row = self.ech.pivots.get(i)
            if row is None:
                nf[i] = {i: f.one}
                continue
            acc: dict[int, object] = {}
            for u, cu in row.items():
                if u < 0:
                    continue
                for b, cb in nf[u].items():
                    s = f.sub(acc.get(b, f.zero), f.mul(cu, cb))
                    if f.is_zero(s):
                        acc.pop(b, None)
                    else:
                        acc[b] = s
            nf[i] = acc
        return nf

    def reduce_element(self, elem: AlgebraElement) -> dict[int, object]:
        """Remainder of an element after reduction by the echelon rows."""
        row = {self.index[w]: c for w, c in elem.terms.items()}
        out = self.ech.reduce(row)
        return {i: c for i, c in out.items() if i >= 0}

    def verify_provenance(self) -> bool:
        """Re-expand every pivot row from its recorded product combination
        and compare; only available when track_provenance was set."""
        if not self.track:
            raise ValueError("span was built without provenance tracking")
        f = self.field
        for lead, row in self.ech.pivots.items():
            if lead < 0:
                continue
            expanded: dict[int, object] = {}
            for pid_neg, coeff in [(c, v) for c, v in row.items() if c < 0]:
                u, X, v = self.products[-pid_neg - 1]
                for w, c in X.terms.items():
                    w1 = concat_words(u, w)
                    if w1 is None:
                        continue
                    w2 = concat_words(w1, v)
                    if w2 is None:
                        continue
                    i = self.index[w2]
                    s = f.add(expanded.get(i, f.zero), f.mul(coeff, c))
                    if f.is_zero(s):
                        expanded.pop(i, None)
                    else:
                        expanded[i] = s
            stored = {lead: f.one}
            for c, v in row.items():
                if c >= 0:
                    stored[c] = v
            if set(expanded) != set(stored):
                return False
            if not all(f.eq(expanded[c], stored[c]) for c in stored):
                return False
        return True


def standard_generator_rank(rel: CommutatorRelation,
                            include_diagonal_conjugates: bool = False) -> dict:
    """Rank of the canonical 13 + 40 low-degree generators of the ideal:
    X and its one- and two-sided products by p_i, q_j and the length-2
    prefixes/suffixes listed in the construction of the degree-4 ideal
    space.  Optionally also includes the diagonal conjugates p_i X p_i and
    q_i X q_i, which are expected to be dependent on the rest."""
    sig, f = rel.sig, rel.field
    X = rel.element
    p = {i: idempotent(sig, f, P, i) for i in (1, 2)}
    q = {i: idempotent(sig, f, Q, i) for i in (1, 2)}

    elements: list[AlgebraElement] = [X]
    for i in (1, 2):
        elements += [p[i] * X, X * p[i], q[i] * X, X * q[i]]
    for i in (1, 2):
        for j in (1, 2):
            if i != j:
                elements += [p[i] * X * p[j], q[i] * X * q[j]]
    count13 = len(elements)
    for i in (1, 2):
        for j in (1, 2):
            elements += [p[i] * q[j] * X, p[i] * X * q[j], X * p[i] * q[j],
                         q[i] * p[j] * X, q[i] * X * p[j], X * q[i] * p[j]]
    for i in (1, 2):
        for j in (1, 2):
            if i == j:
                continue
            for k in (1, 2):
                elements += [p[i] * X * p[j] * q[k], q[k] * p[i] * X * p[j],
                             q[i] * X * q[j] * p[k], p[k] * q[i] * X * q[j]]
    extra: list[AlgebraElement] = []
    if include_diagonal_conjugates:
        for i in (1, 2):
            extra += [p[i] * X * p[i], q[i] * X * q[i]]

    words, index = _order_index(sig, 4)
    ech = SparseEchelon(f)
    for e in elements:
        if e.degree() > 4:
            raise AssertionError("generator unexpectedly exceeds degree 4")
        ech.add_row({index[w]: c for w, c in e.terms.items()})
    base_rank = ech.rank
    rank = base_rank
    for e in extra:
        ech.add_row({index[w]: c for w, c in e.terms.items()})
    if include_diagonal_conjugates:
        rank = ech.rank
    return {
        "generators": len(elements) + len(extra),
        "length_le_3": count13,
        "length_4": len(elements) - count13,
        "rank": base_rank,
        "rank_with_diagonal_conjugates": rank if include_diagonal_conjugates else None,
        "degree4_bound": filtration_dim(sig, 4) - base_rank,
    }


def _order_index(sig: Signature, max_degree: int):
    words = words_up_to(sig, max_degree)
    return words, {w: i for i, w in enumerate(words)}


# ---------------------------------------------------------------------------
# Scan and closure certificate
# ---------------------------------------------------------------------------

@dataclass
class FiltrationReport:
    domain: str
    point: tuple
    per_degree: dict[int, dict]
    stabilized_at: int | None
    slack: int
    window: int
    certificate: "ClosureCertificate | None" = None
    note: str = ""

    def to_json(self, field: Domain) -> dict:
        return {
            "domain": self.domain,
            "point": [field.fmt(c) for c in self.point],
            "per_degree": {str(n): row for n, row in sorted(self.per_degree.items())},
            "stabilized_at": self.stabilized_at,
            "slack": self.slack,
            "window": self.window,
            "note": self.note,
        }


@dataclass
class ClosureCertificate:
    """Monomial basis closed under right multiplication by the generators.

    ``letter_action[g][i]`` expresses basis_word_i * g in the basis; the
    structure constants are derived by folding letters and |basis| is a
    certified upper bound for the quotient dimension in every degree.
    """

    basis: list[Word]
    degree: int
    window: int
    letter_action: dict[Word, list[dict[int, object]]]
    structure_constants: list[list[dict[int, object]]]
    field: Domain
    point: tuple

    @property
    def dimension_bound(self) -> int:
        return len(self.basis)

    def basis_index(self, w: Word) -> int:
        return self.basis.index(w)

    def multiply(self, vec1: dict[int, object], vec2: dict[int, object]) -> dict[int, object]:
        f = self.field
        out: dict[int, object] = {}
        for i, ci in vec1.items():
            for j, cj in vec2.items():
                for k, ck in self.structure_constants[i][j].items():
                    s = f.add(out.get(k, f.zero), f.mul(f.mul(ci, cj), ck))
                    if f.is_zero(s):
                        out.pop(k, None)
                    else:
                        out[k] = s
        return out

    def is_commutative(self) -> bool:
        f = self.field
        n = len(self.basis)
        for i in range(n):
            for j in range(i + 1, n):
                a, b = self.structure_constants[i][j], self.structure_constants[j][i]
                if set(a) != set(b) or not all(f.eq(a[k], b[k]) for k in a):
                    return False
        return True

    def associativity_spot_check(self, trials: int = 100, seed: int = 7) -> bool:
        rng = random.Random(seed)
        f = self.field
        n = len(self.basis)
        for _ in range(trials):
            i, j, k = (rng.randrange(n) for _ in range(3))
            ei, ej, ek = ({i: f.one}, {j: f.one}, {k: f.one})
            left = self.multiply(self.multiply(ei, ej), ek)
            right = self.multiply(ei, self.multiply(ej, ek))
            if set(left) != set(right):
                return False
            if not all(f.eq(left[c], right[c]) for c in left):
                return False
        return True

    def idempotent_split_dims(self) -> tuple[int, int, int] | None:
        """Dimensions of p1*S, p2*S and (1-p1-p2)*S read from the left
        multiplication operators; equal thirds at points fixed by no
        symmetry."""
        from .linalg import dense_rank
        f = self.field
        n = len(self.basis)
        try:
            i1 = self.basis.index(((P, 1),))
            i2 = self.basis.index(((P, 2),))
            iu = self.basis.index(EMPTY_WORD)
        except ValueError:
            return None
        mats = []
        for ig in (i1, i2):
            rows = [[self.structure_constants[ig][j].get(k, f.zero) for k in range(n)]
                    for j in range(n)]
            mats.append(rows)
        unit_rows = [[self.structure_constants[iu][j].get(k, f.zero) for k in range(n)]
                     for j in range(n)]
        rest = [[f.sub(unit_rows[j][k], f.add(mats[0][j][k], mats[1][j][k]))
                 for k in range(n)] for j in range(n)]
        return (dense_rank(f, mats[0]), dense_rank(f, mats[1]), dense_rank(f, rest))

    def to_json(self) -> dict:
        f = self.field
        return {
            "dimension_bound": self.dimension_bound,
            "degree": self.degree,
            "window": self.window,
            "basis": [word_str(w) for w in self.basis],
            "point": [f.fmt(c) for c in self.point],
            "commutative": self.is_commutative(),
            "structure_constants_digest": self.structure_digest(),
        }

    def structure_digest(self) -> str:
        """Deterministic digest of the full multiplication table."""
        import hashlib
        import json as _json
        f = self.field
        table = [
            [sorted((k, f.fmt(c)) for k, c in cell.items()) for cell in row]
            for row in self.structure_constants
        ]
        blob = _json.dumps(table, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def _try_closure(span: IdealSpan, n: int):
    """Attempt the closure certificate at degree n; returns (basis, nf,
    letter_action) or a list of leaking words."""
    f = span.field
    nf = span.normal_forms(n + 1)
    basis_idx = [i for i, w in enumerate(span.words)
                 if len(w) <= n and i not in span.ech.pivots]
    pos = {i: k for k, i in enumerate(basis_idx)}
    leaks = []
    letter_action: dict[Word, list[dict[int, object]]] = {}
    for g in GENERATORS:
        cols: list[dict[int, object]] = []
        for i in basis_idx:
            w = concat_words(span.words[i], g)
            if w is None:
                cols.append({})
                continue
            vec = nf[span.index[w]]
            out: dict[int, object] = {}
            ok = True
            for j, c in vec.items():
                if j not in pos:
                    leaks.append((word_str(span.words[i]), word_str(g), word_str(span.words[j])))
                    ok = False
                    break
                out[pos[j]] = c
            if not ok:
                break
            cols.append(out)
        if leaks:
            break
        letter_action[g] = cols
    if leaks:
        return None, leaks
    return (basis_idx, pos, letter_action), None


def _structure_constants(span: IdealSpan, basis_idx, pos, letter_action):
    f = span.field
    n = len(basis_idx)
    unit_pos = pos[span.index[EMPTY_WORD]]

    def right_mul_letter(vec: dict[int, object], g: Word) -> dict[int, object]:
        out: dict[int, object] = {}
        cols = letter_action[g]
        for k, c in vec.items():
            for m, cm in cols[k].items():
                s = f.add(out.get(m, f.zero), f.mul(c, cm))
                if f.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return out

    table: list[list[dict[int, object]]] = []
    for i in range(n):
        row = []
        for j in range(n):
            vec = {i: f.one}
            for letter in span.words[basis_idx[j]]:
                vec = right_mul_letter(vec, (letter,))
            row.append(vec)
        table.append(row)
    assert all(table[i][unit_pos] == {i: f.one} for i in range(n))
    return table


def closure_certificate(rel: CommutatorRelation, n_max: int = 8, slack: int = 4,
                        span: IdealSpan | None = None,
                        window_cap: int | None = None) -> tuple[ClosureCertificate, IdealSpan]:
    """Grow the product window until two consecutive quotient bounds agree
    and the non-pivot words close under right multiplication by the
    generators; the certificate is returned at the smallest window that
    works, together with the span that proves it."""
    span = span or IdealSpan(rel)
    last_leaks = None
    top_window = n_max + slack
    if window_cap is not None:
        top_window = min(top_window, window_cap)
    for window in range(2, top_window + 1):
        span.extend_to_window(window)
        for n in range(2, min(n_max, window) + 1):
            if span.bound(n) != span.bound(n + 1):
                continue
            got, leaks = _try_closure(span, n)
            if got is None:
                last_leaks = leaks
                continue
            basis_idx, pos, letter_action = got
            table = _structure_constants(span, basis_idx, pos, letter_action)
            cert = ClosureCertificate(
                basis=[span.words[i] for i in basis_idx],
                degree=n,
                window=span.window,
                letter_action=letter_action,
                structure_constants=table,
                field=span.field,
                point=rel.point,
            )
            return cert, span
    raise ClosureFailure(
        f"no multiplication-closed basis up to degree {n_max}; "
        "increase n_max or slack", last_leaks)


def stabilization_scan(rel: CommutatorRelation, n_from: int = 2, n_to: int = 8,
                       slack: int = 4, window_cap: int | None = None,
                       with_closure: bool = True) -> FiltrationReport:
    """Quotient bounds per degree with a stabilization flag.

    If a closure certificate is found, its size bounds every degree at once
    (reported as certified_bound); otherwise the span bounds are reported as
    computed, and for known infinite-dimensional points their strict growth
    is consistency evidence, not proof.  window_cap limits the product
    window for runtime control; bounds stay valid for any window.
    """
    if not 2 <= n_from <= n_to:
        raise ValueError("need 2 <= n_from <= n_to")
    span = IdealSpan(rel)
    stabilized_at = None
    certificate = None
    if with_closure:
        try:
            certificate, span = closure_certificate(
                rel, n_max=n_to, slack=slack, span=span, window_cap=window_cap)
            stabilized_at = certificate.degree
        except ClosureFailure:
            certificate = None
    if certificate is None:
        window = n_to + slack
        if window_cap is not None:
            window = min(window, window_cap)
        span.extend_to_window(window)
    per_degree = {}
    for n in range(n_from, n_to + 1):
        span_bound = span.bound(n)
        certified = span_bound
        if certificate is not None:
            certified = min(span_bound, certificate.dimension_bound)
        per_degree[n] = {
            "dim_ambient": filtration_dim(rel.sig, n),
            "counted_rank": span.counted_rank(n),
            "quotient_bound": span_bound,
            "certified_bound": certified,
        }
    note = ""
    if stabilized_at is None:
        note = ("bounds did not stabilize; strictly increasing bounds are "
                "evidence of infinite dimension, not a proof")
    return FiltrationReport(
        domain=getattr(rel.field, "name", "?"),
        point=rel.point,
        per_degree=per_degree,
        stabilized_at=stabilized_at,
        slack=slack,
        window=span.window,
        certificate=certificate,
        note=note,
    )


# ---------------------------------------------------------------------------
# Reduction coefficients alpha / beta
# ---------------------------------------------------------------------------

@dataclass
class ReductionTable:
    alpha: dict[tuple[int, int, int, int], object]
    beta: dict[tuple[int, int, int, int], object]
    tails_pq: dict[tuple[int, int, int, int], dict]
    tails_qp: dict[tuple[int, int, int, int], dict]
    pivot_ratio: object
    field: Domain

    def alpha_beta_product(self) -> object:
        f = self.field
        return f.mul(self.alpha[(2, 2, 1, 1)], self.beta[(1, 1, 1, 1)])


def reduction_coefficients(rel: CommutatorRelation, n_max: int = 6,
                           slack: int = 4) -> ReductionTable:
    """Coefficients in the degree-4 rewrite rules

        p_i q_j p_k q_l = alpha(i,j,k,l) * p2q1p1q1 + (degree <= 3 tail)
        q_i p_j q_k p_l = beta(i,j,k,l)  * q2p1q1p1 + (degree <= 3 tail)

    valid modulo the ideal.  The coefficients are read off in the
    one-dimensional quotient F^4 S / F^3 S, so they do not depend on which
    degree-4 monomial the echelon happens to keep in the basis; the generic
    requirements are that this quotient is one-dimensional and that both
    reference monomials have nonzero image in it."""
    cert, span = closure_certificate(rel, n_max=n_max, slack=slack)
    f = rel.field
    nf = span.normal_forms(4)
    deg4 = [i for i, w in enumerate(cert.basis) if len(w) == 4]
    if len(deg4) != 1:
        raise DegenerateSpecialization(
            f"F^4/F^3 of the quotient is not one-dimensional (basis has "
            f"{len(deg4)} degree-4 words); resample the point")
    ustar = span.index[cert.basis[deg4[0]]]
    ref_pq = nf[span.index[DEGREE4_PIVOT_PQ]]
    ref_qp = nf[span.index[DEGREE4_PIVOT_QP]]
    lead_pq = ref_pq.get(ustar, f.zero)
    lead_qp = ref_qp.get(ustar, f.zero)
    if f.is_zero(lead_pq) or f.is_zero(lead_qp):
        raise DegenerateSpecialization(
            "a reference degree-4 monomial vanishes in F^4/F^3; resample")

    def split(vec: dict[int, object], ref: dict[int, object], lead) -> tuple[object, dict]:
        coeff = f.div(vec.get(ustar, f.zero), lead)
        tail = {}
        support = set(vec) | set(ref)
        for j in support:
            c = f.sub(vec.get(j, f.zero), f.mul(coeff, ref.get(j, f.zero)))
            if not f.is_zero(c):
                if len(span.words[j]) > 3:
                    raise DegenerateSpecialization("tail escapes degree 3")
                tail[word_str(span.words[j])] = c
        return coeff, tail

    alpha, beta = {}, {}
    tails_pq, tails_qp = {}, {}
    for i in (1, 2):
        for j in (1, 2):
            for k in (1, 2):
                for l in (1, 2):
                    wpq: Word = ((P, i), (Q, j), (P, k), (Q, l))
                    a, t1 = split(nf[span.index[wpq]], ref_pq, lead_pq)
                    alpha[(i, j, k, l)] = a
                    tails_pq[(i, j, k, l)] = t1
                    wqp: Word = ((Q, i), (P, j), (Q, k), (P, l))
                    b, t2 = split(nf[span.index[wqp]], ref_qp, lead_qp)
                    beta[(i, j, k, l)] = b
                    tails_qp[(i, j, k, l)] = t2
    return ReductionTable(alpha, beta, tails_pq, tails_qp, f.div(lead_qp, lead_pq), f)


def verify_reduction_identity(rel: CommutatorRelation, span: IdealSpan,
                              table: ReductionTable, i: int, j: int, k: int, l: int,
                              side: str = "pq") -> bool:
    """Explicitly reduce LHS - RHS of one rewrite identity through the raw
    echelon and confirm it vanishes (ideal membership)."""
    sig, f = rel.sig, rel.field
    if side == "pq":
        w: Word = ((P, i), (Q, j), (P, k), (Q, l))
        lead = AlgebraElement.from_word(sig, f, DEGREE4_PIVOT_PQ, table.alpha[(i, j, k, l)])
        tail = table.tails_pq[(i, j, k, l)]
    else:
        w = ((Q, i), (P, j), (Q, k), (P, l))
        lead = AlgebraElement.from_word(sig, f, DEGREE4_PIVOT_QP, table.beta[(i, j, k, l)])
        tail = table.tails_qp[(i, j, k, l)]
    from .freeproduct import word_from_str
    rhs = lead
    for ws, c in tail.items():
        rhs = rhs + AlgebraElement.from_word(sig, f, word_from_str(ws), c)
    diff = AlgebraElement.from_word(sig, f, w) - rhs
    return not span.reduce_element(diff)


# ---------------------------------------------------------------------------
# Symmetric group action on the function field and on the relation
# ---------------------------------------------------------------------------

@dataclass
class SigmaAction:
    """The two generating symmetries: permutations of {p1, p2, 1-p1-p2}
    together with fractional-linear substitutions on (y1, y2, y3)."""

    field: FunctionField

    def images_sigma1(self) -> tuple[RationalFunction, ...]:
        y1, y2, y3 = self.field.gens()
        return (y3 / y2, 1 / y2, y1 / y2)

    def images_sigma2(self) -> tuple[RationalFunction, ...]:
        y1, y2, y3 = self.field.gens()
        return (y1, 1 - y2, y1 - y3)

    @staticmethod
    def compose(outer: tuple, inner: tuple) -> tuple:
        """Images of (outer o inner): apply inner first, then outer; the
        generator images of the composite are inner's images evaluated at
        outer's images."""
        return tuple(t.evaluate(outer) for t in inner)

    def _ev(self, c: RationalFunction, imgs) -> RationalFunction:
        out = c.evaluate(imgs)
        if isinstance(out, RationalFunction):
            return out
        return RationalFunction.constant(self.field.vars, out)

    def apply_sigma1(self, elem: AlgebraElement) -> AlgebraElement:
        imgs = self.images_sigma1()
        sig, f = elem.sig, elem.field
        swap = {
            (P, 1): AlgebraElement.from_word(sig, f, ((P, 2),)),
            (P, 2): AlgebraElement.from_word(sig, f, ((P, 1),)),
        }
        return elem.substitute_letters(swap, coeff_map=lambda c: self._ev(c, imgs))

    def apply_sigma2(self, elem: AlgebraElement) -> AlgebraElement:
        imgs = self.images_sigma2()
        sig, f = elem.sig, elem.field
        p3 = idempotent(sig, f, P, 3)
        sub = {(P, 1): p3}
        return elem.substitute_letters(sub, coeff_map=lambda c: self._ev(c, imgs))


def sigma_check(field: FunctionField | None = None) -> dict:
    """Exact symbolic verification of the symmetry identities:
    sigma1(X) = (1/y2) X, sigma2(X) = -X, and the group relations
    sigma1^2 = sigma2^2 = (sigma1 sigma2)^3 = id on (y1, y2, y3)."""
    F = field or FunctionField(("y1", "y2", "y3"))
    y1, y2, y3 = F.gens()
    act = SigmaAction(F)
    rel = make_relation(F, chart=(y1, y2, y3))
    X = rel.element

    s1X = act.apply_sigma1(X)
    s2X = act.apply_sigma2(X)
    ok_s1 = (s1X - X.scale(1 / y2)).is_zero()
    ok_s2 = (s2X + X).is_zero()

    gens = F.gens()
    s1 = act.images_sigma1()
    s2 = act.images_sigma2()
    ok_s1_sq = SigmaAction.compose(s1, s1) == gens
    ok_s2_sq = SigmaAction.compose(s2, s2) == gens
    m = SigmaAction.compose(s1, s2)
    m3 = SigmaAction.compose(m, SigmaAction.compose(m, m))
    ok_order3 = m3 == gens
    return {
        "sigma1_X_is_X_over_y2": ok_s1,
        "sigma2_X_is_minus_X": ok_s2,
        "sigma1_squared_id": ok_s1_sq,
        "sigma2_squared_id": ok_s2_sq,
        "sigma1_sigma2_cubed_id": ok_order3,
        "sigma1_of_y2": repr(s1[1]),
        "sigma2_of_y3": repr(s2[2]),
        "all": all([ok_s1, ok_s2, ok_s1_sq, ok_s2_sq, ok_order3]),
    }


# ---------------------------------------------------------------------------
# Helpers for specialization
# ---------------------------------------------------------------------------

def chart_in_field(field: Domain, y: tuple[Fraction, Fraction, Fraction]) -> tuple:
    """Push a rational chart triple into the working field."""
    if isinstance(field, PrimeField):
        return tuple(field.from_fraction(Fraction(c)) for c in y)
    if field is QQ or getattr(field, "name", "") == "rational":
        return tuple(Fraction(c) for c in y)
    raise TypeError(f"cannot specialize chart into {field!r}")


def random_offquadric_chart(rng: random.Random) -> tuple[Fraction, Fraction, Fraction]:
    """Small random rational chart triple with y3 != y1*y2 (off the quadric)."""
    while True:
        y = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3))
        if any(y) and y[2] != y[0] * y[1]:
            return y


def spanning_monomials_rank(cert: ClosureCertificate, span: IdealSpan) -> dict:
    """Rank of the classical 19-monomial degree-4 spanning list inside the
    certified quotient basis; a single linear dependence is expected at
    generic points."""
    from .freeproduct import word_from_str
    from .linalg import dense_rank
    f = cert.field
    nf = span.normal_forms(4)
    pos = {span.index[w]: k for k, w in enumerate(cert.basis)}
    rows = []
    for s in SPANNING_MONOMIALS_DEGREE4:
        w = word_from_str(s)
        vec = nf[span.index[w]]
        row = [f.zero] * len(cert.basis)
        for j, c in vec.items():
            row[pos[j]] = c
        rows.append(row)
    rank = dense_rank(f, rows)
    return {"listed": len(rows), "rank": rank, "dependencies": len(rows) - rank}
