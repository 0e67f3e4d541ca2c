"""Labeled polyhedral complexes and the free resolutions they support.

A complex is given combinatorially by cell dimensions and cover relations.
Incidence signs are assigned by propagation across diamonds, then a
labeled (cellular) or colabeled (cocellular) algebraic complex is built.
Exactness is checked degree by degree on the lcm-lattice of the labels
with exact integer elimination, over the rationals or a prime field.
"""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Sequence

from .complex import TropicalComplex, bounded_subcomplex
from .ideals import MonomialIdeal, VariableSpace, divides, format_monomial, lcm

__all__ = [
    "InvalidComplexError",
    "LabelingError",
    "LabeledComplex",
    "AlgebraicComplex",
    "BettiTable",
    "VerificationReport",
    "assign_incidence_signs",
    "check_boundary_squared",
    "labeled_complex",
    "build_cellular",
    "build_cocellular",
    "resolve",
    "lcm_lattice",
    "matrix_rank",
    "verify_resolution",
    "check_minimality",
    "betti_table",
    "fvector_from_betti",
    "generic_fvector",
]

Monomial = tuple[int, ...]


class InvalidComplexError(ValueError):
    """The face poset is not that of a polyhedral complex."""


class LabelingError(ValueError):
    """Labels violate the (co)labeling condition."""


def assign_incidence_signs(
    dims: Sequence[int], covers: Iterable[tuple[int, int]]
) -> dict[tuple[int, int], int]:
    """Signs ``eps(H, G)`` on covers ``(G, H)`` making every diamond cancel.

    Cells are processed by increasing dimension.  Within a cell the first
    facet gets ``+1`` and the rest follow from the diamonds through each
    ridge; an edge with two endpoints gets opposite signs.  A ridge lying in
    more than two facets of a cell is rejected.
    """
    facets: dict[int, list[int]] = defaultdict(list)
    for g, h in covers:
        if dims[h] != dims[g] + 1:
            raise InvalidComplexError(f"cover ({g}, {h}) does not raise dimension by one")
        facets[h].append(g)
    eps: dict[tuple[int, int], int] = {}
    for h in sorted(range(len(dims)), key=lambda c: (dims[c], c)):
        fs = sorted(facets.get(h, ()))
        if not fs:
            continue
        if dims[h] == 1:
            if len(fs) > 2:
                raise InvalidComplexError(f"edge {h} has {len(fs)} endpoints")
            eps[(h, fs[0])] = 1
            if len(fs) == 2:
                eps[(h, fs[1])] = -1
            continue
        # ridge -> facets of h containing it
        through: dict[int, list[int]] = defaultdict(list)
        for f in fs:
            for r in facets.get(f, ()):
                through[r].append(f)
        adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for r, fr in through.items():
            if len(fr) > 2:
                raise InvalidComplexError(
                    f"interval between cells {r} and {h} is not a diamond ({len(fr)} middles)"
                )
            if len(fr) == 2:
                a, b = fr
                adj[a].append((b, r))
                adj[b].append((a, r))
        sign: dict[int, int] = {}
        for root in fs:
            if root in sign:
                continue
            sign[root] = 1
            todo = deque([root])
            while todo:
                a = todo.popleft()
                for b, r in adj[a]:
                    want = -sign[a] * eps[(a, r)] * eps[(b, r)]
                    if b not in sign:
                        sign[b] = want
                        todo.append(b)
                    elif sign[b] != want:
                        raise InvalidComplexError(f"inconsistent orientation around cell {h}")
        for f in fs:
            eps[(h, f)] = sign[f]
    return eps


def check_boundary_squared(
    dims: Sequence[int], covers: Iterable[tuple[int, int]], eps: Mapping[tuple[int, int], int]
) -> bool:
    """Whether ``sum_F eps(H, F) eps(F, G) == 0`` for all codimension-2 pairs.

    Edges with two endpoints must also have signs summing to zero.
    """
    facets: dict[int, list[int]] = defaultdict(list)
    for g, h in covers:
        facets[h].append(g)
    for h, fs in facets.items():
        if dims[h] == 1:
            if len(fs) == 2 and eps[(h, fs[0])] + eps[(h, fs[1])] != 0:
                return False
            continue
        total: Counter = Counter()
        for f in fs:
            for g in facets.get(f, ()):
                total[g] += eps[(h, f)] * eps[(f, g)]
        if any(total.values()):
            return False
    return True


@dataclass
class LabeledComplex:
    """Cell dimensions, covers ``(face, cofacet)``, one monomial label per cell."""

    dims: list[int]
    covers: frozenset[tuple[int, int]]
    labels: list[Monomial]
    space: VariableSpace
    mode: str = "labeled"
    eps: dict[tuple[int, int], int] = field(default=None)

    def __post_init__(self):
        if self.mode not in ("labeled", "colabeled"):
            raise ValueError("mode must be 'labeled' or 'colabeled'")
        if self.eps is None:
            self.eps = assign_incidence_signs(self.dims, self.covers)

    @property
    def top_dim(self) -> int:
        return max(self.dims) if self.dims else -1

    def validate(self) -> None:
        """Raise :class:`LabelingError` unless labels are lcms over (co)faces."""
        up: dict[int, list[int]] = defaultdict(list)
        down: dict[int, list[int]] = defaultdict(list)
        for g, h in self.covers:
            up[g].append(h)
            down[h].append(g)
        nbrs = down if self.mode == "labeled" else up
        for c, lab in enumerate(self.labels):
            others = nbrs.get(c)
            if not others:
                continue
            want = self.labels[others[0]]
            for o in others[1:]:
                want = lcm(want, self.labels[o])
            if want != tuple(lab):
                kind = "faces" if self.mode == "labeled" else "cofaces"
                raise LabelingError(
                    f"cell {c}: label {format_monomial(tuple(lab), self.space)} is not the lcm "
                    f"over its {kind} ({format_monomial(want, self.space)})"
                )


@dataclass
class AlgebraicComplex:
    """Free modules ``F_i`` (lists of cell ids with degrees) and differentials.

    ``differentials[i]`` maps ``F_i -> F_{i-1}`` (index 0 unused) as a dict
    ``(target_cell, source_cell) -> (sign, exponent difference)``.
    """

    space: VariableSpace
    modules: list[list[tuple[int, Monomial]]]
    differentials: list[dict[tuple[int, int], tuple[int, Monomial]]]

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.modules)

    def composition_vanishes(self, p: int | None = None) -> bool:
        """Check ``phi_{i-1} o phi_i == 0`` as polynomial matrices (coefficients mod ``p``)."""
        return not self._nonzero_compositions(p)

    def _nonzero_compositions(self, p: int | None = None) -> list[int]:
        bad = []
        for i in range(2, len(self.modules)):
            outer = defaultdict(list)
            for (t, s), entry in self.differentials[i - 1].items():
                outer[s].append((t, entry))
            acc: Counter = Counter()
            for (mid, src), (s1, e1) in self.differentials[i].items():
                for tgt, (s2, e2) in outer.get(mid, ()):
                    acc[(tgt, src, tuple(a + b for a, b in zip(e1, e2)))] += s1 * s2
            if any(v if p is None else v % p for v in acc.values()):
                bad.append(i)
        return bad

    def matrix(self, i: int) -> list[list[str]]:
        """Human-readable matrix of ``phi_i`` (rows: ``F_{i-1}``, columns: ``F_i``)."""
        rows = [c for c, _ in self.modules[i - 1]]
        cols = [c for c, _ in self.modules[i]]
        out = []
        for r in rows:
            line = []
            for c in cols:
                e = self.differentials[i].get((r, c))
                if e is None:
                    line.append("0")
                else:
                    s, m = e
                    mono = format_monomial(m, self.space)
                    line.append(("-" if s < 0 else "") + mono)
            out.append(line)
        return out


def labeled_complex(tc: TropicalComplex, labels: str) -> LabeledComplex:
    """The four standard labelings of an arrangement's complexes.

    ``fine_type`` / ``coarse_type`` colabel the full decomposition;
    ``fine_cotype`` / ``coarse_cotype`` label the bounded subcomplex.
    """
    arr = tc.arrangement
    if labels in ("fine_type", "coarse_type"):
        base, mode = tc, "colabeled"
    elif labels in ("fine_cotype", "coarse_cotype"):
        base, mode = bounded_subcomplex(tc), "labeled"
    else:
        raise ValueError(f"unknown labeling {labels!r}")
    if labels.startswith("fine"):
        space = VariableSpace.grid(arr.n, arr.d)
        attr = "type" if labels == "fine_type" else "cotype"
        labs = [tuple(x for row in getattr(c, attr) for x in row) for c in base.cells]
    else:
        space = VariableSpace.coarse(arr.d)
        attr = "coarse" if labels == "coarse_type" else "coarse_cotype"
        labs = [getattr(c, attr) for c in base.cells]
    return LabeledComplex(
        dims=[c.dim for c in base.cells],
        covers=base.covers,
        labels=labs,
        space=space,
        mode=mode,
    )


def _build(lc: LabeledComplex, index_of, cellular: bool) -> AlgebraicComplex:
    lc.validate()
    top = max((index_of(d) for d in lc.dims), default=-1)
    modules: list[list[tuple[int, Monomial]]] = [[] for _ in range(top + 1)]
    for c in sorted(range(len(lc.dims)), key=lambda c: (lc.dims[c], c)):
        modules[index_of(lc.dims[c])].append((c, tuple(lc.labels[c])))
    diffs: list[dict] = [dict() for _ in range(top + 1)]
    for g, h in lc.covers:
        # The source sits at homological index i, the target at i - 1.
        src, tgt = (h, g) if cellular else (g, h)
        i = index_of(lc.dims[src])
        a_src, a_tgt = lc.labels[src], lc.labels[tgt]
        diffs[i][(tgt, src)] = (lc.eps[(h, g)], tuple(x - y for x, y in zip(a_src, a_tgt)))
    return AlgebraicComplex(lc.space, modules, diffs)


def build_cellular(lc: LabeledComplex) -> AlgebraicComplex:
    """Homological index ``i`` is spanned by the ``i``-cells."""
    if lc.mode != "labeled":
        raise LabelingError("cellular complexes need a labeled complex")
    return _build(lc, lambda dim: dim, cellular=True)


def build_cocellular(lc: LabeledComplex, top_dim: int | None = None) -> AlgebraicComplex:
    """Homological index ``i`` is spanned by cells of dimension ``top_dim - i``."""
    if lc.mode != "colabeled":
        raise LabelingError("cocellular complexes need a colabeled complex")
    top = lc.top_dim if top_dim is None else top_dim
    return _build(lc, lambda dim: top - dim, cellular=False)


def resolve(tc: TropicalComplex, labels: str) -> tuple[AlgebraicComplex, MonomialIdeal]:
    """Build the complex for one of the four labelings plus the ideal it should resolve."""
    from .ideals import coarse_type_ideal, cotype_ideal, fine_type_ideal

    lc = labeled_complex(tc, labels)
    if labels == "fine_type":
        return build_cocellular(lc, tc.ambient_dim), fine_type_ideal(tc)
    if labels == "coarse_type":
        return build_cocellular(lc, tc.ambient_dim), coarse_type_ideal(tc)
    if labels == "fine_cotype":
        return build_cellular(lc), cotype_ideal(tc, "fine")
    return build_cellular(lc), cotype_ideal(tc, "coarse")


# -- exactness --


class _Packer:
    """Monomials packed into one integer, a guard bit above every exponent field.

    With guards ``G``, ``a`` divides ``b`` iff ``((b | G) - a) & G == G``, and the
    same subtraction yields the per-field comparison mask used for lcm.
    """

    def __init__(self, nvars: int, max_exp: int):
        self.nvars = nvars
        self.width = max(1, max_exp.bit_length()) + 1
        w = self.width
        self.guards = sum(1 << (v * w + w - 1) for v in range(nvars))
        self.values = sum(((1 << (w - 1)) - 1) << (v * w) for v in range(nvars))

    def pack(self, m: Monomial) -> int:
        w = self.width
        return sum(x << (v * w) for v, x in enumerate(m))

    def unpack(self, x: int) -> Monomial:
        w = self.width
        mask = (1 << (w - 1)) - 1
        return tuple((x >> (v * w)) & mask for v in range(self.nvars))

    def divides(self, a: int, b: int) -> bool:
        G = self.guards
        return ((b | G) - a) & G == G

    def lcm(self, a: int, b: int) -> int:
        G = self.guards
        ge = ((a | G) - b) & G  # guard set where a >= b
        mask = ge - (ge >> (self.width - 1))
        return (a & mask) | (b & ~mask & self.values)


def _packed_lattice(packer: _Packer, gens: list[int], limit: int) -> set[int]:
    seen: set[int] = set()
    for g in sorted(set(gens)):
        new = {g} | {packer.lcm(x, g) for x in seen}
        seen |= new
        if len(seen) > limit:
            raise RuntimeError(f"lcm-lattice exceeds {limit} elements")
    return seen


def lcm_lattice(monomials: Iterable[Monomial], limit: int = 2_000_000) -> set[Monomial]:
    """Closure of the given monomials under pairwise lcm."""
    mons = [tuple(m) for m in monomials]
    if not mons:
        return set()
    packer = _Packer(len(mons[0]), max(max(m, default=0) for m in mons))
    return {packer.unpack(x) for x in _packed_lattice(packer, [packer.pack(m) for m in mons], limit)}


def matrix_rank(rows: list[list[int]], p: int | None = None) -> int:
    """Rank of an integer matrix over the rationals (``p is None``) or GF(p).

    Over the rationals this is fraction-free (Bareiss-style) elimination.
    """
    if not rows or not rows[0]:
        return 0
    M = [r[:] for r in rows] if p is None else [[x % p for x in r] for r in rows]
    nrows, ncols = len(M), len(M[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if M[r][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        pr = M[rank]
        a = pr[col]
        if p is None:
            for r in range(rank + 1, nrows):
                row = M[r]
                b = row[col]
                for c in range(col, ncols):
                    row[c] = (a * row[c] - b * pr[c]) // prev
            prev = a
        else:
            inv = pow(a, -1, p)
            for r in range(rank + 1, nrows):
                row = M[r]
                b = row[col]
                if b:
                    f = b * inv % p
                    for c in range(col, ncols):
                        row[c] = (row[c] - f * pr[c]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


@dataclass
class VerificationReport:
    field: str
    degrees_checked: int
    failures: list[tuple[Monomial, int, str]]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def _rank_gf2(rows: list[int]) -> int:
    """Rank of 0/1 rows given as bit masks."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                rank += 1
                break
    return rank


def _rank_mod(mat: list[list[int]], p: int) -> int:
    """Rank over GF(p) by sparse elimination (rows as ``{column: value}``)."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in mat:
        r = {k: x % p for k, x in enumerate(row) if x % p}
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(r[lead], -1, p)
                pivots[lead] = {k: x * inv % p for k, x in r.items()}
                rank += 1
                break
            f = r[lead]
            for k, x in piv.items():
                v = (r.get(k, 0) - f * x) % p
                if v:
                    r[k] = v
                else:
                    r.pop(k, None)
    return rank


def _augmentation_signs(ac: AlgebraicComplex) -> dict[int, int] | None:
    """Signs ``s_c`` making ``c -> s_c x^label(c)`` vanish on the image of ``phi_1``.

    Every column of ``phi_1`` needs two entries whose signed contributions
    cancel; signs are propagated along those pairs.  ``None`` if impossible.
    """
    sigma = {c: None for c, _ in ac.modules[0]} if ac.modules else {}
    if len(ac.modules) < 2:
        return {c: 1 for c in sigma}
    cols: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for (t, s), (sign, _) in ac.differentials[1].items():
        cols[s].append((t, sign))
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for entries in cols.values():
        if len(entries) != 2:
            return None
        (a, sa), (b, sb) = entries
        # s_a * sa + s_b * sb = 0
        adj[a].append((b, -sa * sb))
        adj[b].append((a, -sa * sb))
    for root in sigma:
        if sigma[root] is not None:
            continue
        sigma[root] = 1
        todo = deque([root])
        while todo:
            a = todo.popleft()
            for b, rel in adj[a]:
                want = sigma[a] * rel
                if sigma[b] is None:
                    sigma[b] = want
                    todo.append(b)
                elif sigma[b] != want:
                    return None
    return sigma


def verify_resolution(
    ac: AlgebraicComplex, I: MonomialIdeal, p: int | None = None
) -> VerificationReport:
    """Check that ``ac`` resolves the ideal ``I`` (index 0 maps onto ``I``).

    For each ``b`` in the lcm-lattice of all labels and generators, the
    degree-``b`` strand is restricted to basis elements whose degree divides
    ``b``.  It must be exact at every index ``i >= 1``, and at index 0 its
    cokernel must have dimension 1 exactly when ``x^b`` lies in ``I``.

    Over the rationals, ranks are first taken over GF(2), which can only be
    smaller.  Once the maps compose to zero the rational ranks are bounded
    above, so a strand that is exact over GF(2) is exact over the rationals
    as well.  At index 0 the same argument needs a sign choice on the
    generators under which ``phi_1`` maps into the kernel of the map onto
    the ideal.  Strands that look defective, or all strands when no such
    signs exist, are computed exactly.
    """
    field_name = "QQ" if p is None else f"GF({p})"
    # Homology from ranks is only meaningful for an honest complex.
    failures = [(None, i, "differentials do not compose to zero") for i in ac._nonzero_compositions(p)]
    if failures:
        return VerificationReport(field_name, 0, failures)

    labels = [m for mod in ac.modules for _, m in mod]
    allmons = labels + list(I.gens)
    if not allmons:
        return VerificationReport(field_name, 0, [])
    packer = _Packer(ac.space.nvars, max(max(m, default=0) for m in allmons))
    lattice = _packed_lattice(packer, [packer.pack(m) for m in allmons], 2_000_000)
    gens = [packer.pack(g) for g in I.gens]
    top = len(ac.modules) - 1
    packed = [[(c, packer.pack(m)) for c, m in mod] for mod in ac.modules]
    # columns of phi_i: source cell -> [(target cell, sign)]
    columns = [defaultdict(list) for _ in range(top + 1)]
    for i in range(1, top + 1):
        for (t, s), (sign, _) in ac.differentials[i].items():
            columns[i][s].append((t, sign))

    def strand_ranks(live, exact: bool):
        ranks = [0] * (top + 2)
        for i in range(1, top + 1):
            rows, cols = live[i - 1], live[i]
            if not rows or not cols:
                continue
            rpos = {c: k for k, c in enumerate(rows)}
            if p == 2 or (p is None and not exact):
                # transpose: one bit mask per column, rank is the same
                masks = []
                for c in cols:
                    m = 0
                    for t, _ in columns[i][c]:
                        k = rpos.get(t)
                        if k is not None:
                            m |= 1 << k
                    masks.append(m)
                ranks[i] = _rank_gf2(masks)
                continue
            mat = [[0] * len(rows) for _ in cols]
            for j, c in enumerate(cols):
                for t, sign in columns[i][c]:
                    k = rpos.get(t)
                    if k is not None:
                        mat[j][k] = sign
            ranks[i] = matrix_rank(mat) if p is None else _rank_mod(mat, p)
        return ranks

    def defects(b, live, ranks):
        out = []
        for i in range(1, top + 1):
            homology = len(live[i]) - ranks[i] - ranks[i + 1]
            if homology:
                out.append((packer.unpack(b), i, f"homology of dimension {homology}"))
        coker = len(live[0]) - ranks[1]
        expected = 1 if any(packer.divides(g, b) for g in gens) else 0
        if coker != expected:
            out.append((packer.unpack(b), 0, f"cokernel dimension {coker}, expected {expected}"))
        return out

    shortcut = p is None and _augmentation_signs(ac) is not None
    div = packer.divides
    for b in sorted(lattice):
        live = [[c for c, m in mod if div(m, b)] for mod in packed]
        bad = defects(b, live, strand_ranks(live, exact=not shortcut and p is None))
        if bad and p is None:
            bad = defects(b, live, strand_ranks(live, exact=True))
        failures.extend(bad)
    failures.sort(key=lambda f: (f[0], f[1]))
    return VerificationReport(field_name, len(lattice), failures)


def check_minimality(ac: AlgebraicComplex) -> bool:
    """Minimal iff no differential entry is a unit (zero exponent difference)."""
    return all(any(e) for diff in ac.differentials for _, e in diff.values())


@dataclass
class BettiTable:
    """Multigraded Betti numbers ``(i, degree) -> multiplicity``."""

    fine: Counter
    space: VariableSpace

    @property
    def coarse(self) -> Counter:
        """``(i, total degree) -> multiplicity``."""
        out: Counter = Counter()
        for (i, deg), m in self.fine.items():
            out[(i, sum(deg))] += m
        return out

    def total(self, i: int) -> int:
        return sum(m for (j, _), m in self.fine.items() if j == i)

    def totals(self) -> tuple[int, ...]:
        top = max((i for i, _ in self.fine), default=-1)
        return tuple(self.total(i) for i in range(top + 1))

    def rows(self) -> list[tuple[int, Monomial, int]]:
        """Serialization rows ``(i, exponent vector, multiplicity)``, sorted."""
        return sorted((i, deg, m) for (i, deg), m in self.fine.items())


def betti_table(ac: AlgebraicComplex) -> BettiTable:
    fine: Counter = Counter()
    for i, mod in enumerate(ac.modules):
        for _, m in mod:
            fine[(i, m)] += 1
    return BettiTable(fine, ac.space)


def fvector_from_betti(bt: BettiTable, n: int, d: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Cell counts from the coarse-type Betti table: ``f_k = beta_{d-1-k}``.

    The bounded count sums only degrees with every coordinate positive.
    """
    f = []
    fb = []
    for k in range(d):
        i = d - 1 - k
        f.append(bt.total(i))
        fb.append(sum(m for (j, deg), m in bt.fine.items() if j == i and all(x > 0 for x in deg)))
    return tuple(f), tuple(fb)


def generic_fvector(n: int, d: int) -> tuple[int, ...]:
    """Cell counts of a generic arrangement of ``n`` hyperplanes in the ``(d-1)``-torus."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    return tuple(
        sum(comb(n + d - 2 - l, n - 1) * comb(d - 1 - l, d - 1 - k) for l in range(k + 1))
        for k in range(d)
    )
