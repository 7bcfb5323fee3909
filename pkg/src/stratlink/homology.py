"""Exact simplicial homology.

Integer homology uses Smith normal form: unit pivots are eliminated on a
sparse matrix first (simplicial boundary matrices are almost entirely unit
reducible), then the remaining block goes through a dense Smith reduction.
Rational homology takes an independent route through Gaussian elimination
over ``Fraction``; prime-field homology reduces mod p.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .complex import StratComplex, Subcomplex
from .errors import DecompositionInvalid, NotSubcomplex


@dataclass(frozen=True)
class ChainComplexZ:
    """Bases of simplices per dimension and sparse integer boundary columns."""

    bases: tuple
    boundaries: tuple  # boundaries[n][j] = {row index: coefficient} for n >= 1

    def matrix(self, n: int) -> list[list[int]]:
        """Dense ∂_n with rows indexed by (n-1)-simplices."""
        rows = len(self.bases[n - 1])
        out = [[0] * len(self.bases[n]) for _ in range(rows)]
        for j, col in enumerate(self.boundaries[n]):
            for i, v in col.items():
                out[i][j] = v
        return out


def _boundary(sigma) -> list[tuple[tuple, int]]:
    return [(sigma[:i] + sigma[i + 1:], -1 if i % 2 else 1) for i in range(len(sigma))]


def chain_complex(K) -> ChainComplexZ:
    simplices = _simplices(K)
    by_dim: dict[int, list] = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim, default=-1)
    bases = tuple(sorted(by_dim.get(n, [])) for n in range(top + 1))
    index = [{s: i for i, s in enumerate(b)} for b in bases]
    boundaries = [()]
    for n in range(1, top + 1):
        boundaries.append(tuple({index[n - 1][f]: c for f, c in _boundary(s)} for s in bases[n]))
    return ChainComplexZ(bases, tuple(boundaries))


def _simplices(K) -> frozenset:
    if isinstance(K, (StratComplex, Subcomplex)):
        return K.simplices
    return frozenset(K)


# --------------------------------------------------------------------------
# integer Smith normal form


def _eliminate_units(cols: dict[int, dict[int, int]]) -> int:
    """Remove unit pivots in place (Markowitz-style choice); returns their number."""
    rows: dict[int, set[int]] = {}
    for j, col in cols.items():
        for i in col:
            rows.setdefault(i, set()).add(j)
    heap = [(len(c), j) for j, c in cols.items()]
    heapq.heapify(heap)
    eliminated = 0
    while heap:
        length, j = heapq.heappop(heap)
        col = cols.get(j)
        if col is None:
            continue
        if len(col) != length:
            heapq.heappush(heap, (len(col), j))
            continue
        if not col:
            del cols[j]
            continue
        r = min((i for i, v in col.items() if v in (1, -1)), key=lambda i: (len(rows[i]), i), default=None)
        if r is None:
            continue
        v = col[r]
        for j2 in sorted(rows[r] - {j}):
            c2 = cols[j2]
            f = c2[r] * v
            for i, x in col.items():
                new = c2.get(i, 0) - f * x
                if new:
                    if i not in c2:
                        rows[i].add(j2)
                    c2[i] = new
                else:
                    c2.pop(i, None)
                    rows[i].discard(j2)
            heapq.heappush(heap, (len(c2), j2))
        for i in col:
            rows[i].discard(j)
        del cols[j]
        eliminated += 1
    return eliminated


def _dense_snf_diagonal(M: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense integer matrix."""
    M = [row[:] for row in M if any(row)]
    diag = []
    while M and M[0]:
        entries = [(abs(v), i, j) for i, row in enumerate(M) for j, v in enumerate(row) if v]
        if not entries:
            break
        _, pi, pj = min(entries)
        M[0], M[pi] = M[pi], M[0]
        for row in M:
            row[0], row[pj] = row[pj], row[0]
        while True:
            changed = False
            p = M[0][0]
            for i in range(1, len(M)):
                if M[i][0]:
                    q = M[i][0] // p
                    M[i] = [a - q * b for a, b in zip(M[i], M[0])]
                    if M[i][0]:
                        M[0], M[i] = M[i], M[0]
                        changed = True
                        break
            if changed:
                continue
            p = M[0][0]
            for j in range(1, len(M[0])):
                if M[0][j]:
                    q = M[0][j] // p
                    for row in M:
                        row[j] -= q * row[0]
                    if M[0][j]:
                        for row in M:
                            row[0], row[j] = row[j], row[0]
                        changed = True
                        break
            if changed:
                continue
            bad = next(
                (i for i in range(1, len(M)) if any(v % p for v in M[i][1:])),
                None,
            )
            if bad is not None:
                M[0] = [a + b for a, b in zip(M[0], M[bad])]
                continue
            break
        diag.append(abs(M[0][0]))
        M = [row[1:] for row in M[1:]]
        M = [row for row in M if any(row)]
    return diag


def invariant_factors(columns: Iterable[dict]) -> list[int]:
    """Nonzero diagonal of the Smith normal form of a sparse integer matrix."""
    cols = {j: dict(c) for j, c in enumerate(columns) if c}
    units = _eliminate_units(cols)
    rest = {j: c for j, c in cols.items() if c}
    if not rest:
        return [1] * units
    row_ids = sorted({i for c in rest.values() for i in c})
    pos = {i: k for k, i in enumerate(row_ids)}
    order = sorted(rest)
    dense = [[0] * len(order) for _ in row_ids]
    for k, j in enumerate(order):
        for i, v in rest[j].items():
            dense[pos[i]][k] = v
    return [1] * units + sorted(_dense_snf_diagonal(dense))


# --------------------------------------------------------------------------
# field ranks


def _rank_mod(columns: Iterable[dict], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for col in columns:
        v = {i: x % p for i, x in col.items() if x % p}
        while v:
            k = max(v)
            b = pivots.get(k)
            if b is None:
                inv = pow(v[k], -1, p)
                pivots[k] = {i: x * inv % p for i, x in v.items()}
                break
            c = v[k]
            for i, x in b.items():
                y = (v.get(i, 0) - c * x) % p
                if y:
                    v[i] = y
                else:
                    v.pop(i, None)
    return len(pivots)


class _Echelon:
    """Incremental row-echelon basis of sparse rational vectors.

    Each stored vector has its largest key as pivot, normalised to 1.  An
    optional tag vector records the combination of inserted inputs it came
    from, which gives kernels and coordinates.
    """

    def __init__(self):
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict, tag: dict | None = None) -> tuple[dict, dict]:
        v = {k: Fraction(x) for k, x in v.items() if x}
        tag = dict(tag or {})
        while True:
            k = max((k for k in v if k in self.rows), default=None)
            if k is None:
                return v, tag
            bv, bt = self.rows[k]
            c = v[k]
            for i, x in bv.items():
                y = v.get(i, 0) - c * x
                if y:
                    v[i] = y
                else:
                    v.pop(i, None)
            for i, x in bt.items():
                y = tag.get(i, 0) - c * x
                if y:
                    tag[i] = y
                else:
                    tag.pop(i, None)

    def add(self, v: dict, tag: dict | None = None) -> tuple[bool, dict]:
        """Insert v; returns (independent, residual tag)."""
        v, tag = self.reduce(v, tag)
        if not v:
            return False, tag
        k = max(v)
        c = v[k]
        self.rows[k] = ({i: x / c for i, x in v.items()}, {i: x / c for i, x in tag.items()})
        return True, tag


def _rank_rational(columns: Iterable[dict]) -> int:
    E = _Echelon()
    for col in columns:
        E.add(col)
    return len(E)


# --------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class BettiTable:
    betti: tuple
    torsion: tuple
    coeff: str = "int"

    def trimmed(self) -> tuple:
        """Betti numbers and torsion with trailing trivial groups dropped."""
        b, t = list(self.betti), list(self.torsion)
        while b and b[-1] == 0 and not t[-1]:
            b.pop()
            t.pop()
        return tuple(b), tuple(tuple(x) for x in t)

    def same_homology(self, other: "BettiTable") -> bool:
        return self.trimmed() == other.trimmed()

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * b for n, b in enumerate(self.betti))

    def lines(self) -> list[str]:
        ring = {"int": "Z", "rat": "Q"}.get(self.coeff, f"F{self.coeff.partition(':')[2]}")
        if not self.betti:
            return ["H_*: 0 (empty complex)"]
        out = []
        for n, (b, ts) in enumerate(zip(self.betti, self.torsion)):
            parts = [f"{ring}^{b}"] if b else []
            parts += [f"Z/{t}" for t in ts]
            out.append(f"H_{n}: " + (" + ".join(parts) if parts else "0"))
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _parse_coeff(coeff) -> tuple[str, int | None]:
    if coeff in ("int", "integers", "Z", None):
        return "int", None
    if coeff in ("rat", "rationals", "Q"):
        return "rat", None
    if isinstance(coeff, int):
        p = coeff
    else:
        text = str(coeff)
        if not text.startswith("mod:"):
            raise ValueError(f"unknown coefficients {coeff!r}; use int, rat or mod:<prime>")
        try:
            p = int(text[4:])
        except ValueError:
            raise ValueError(f"unknown coefficients {coeff!r}; use int, rat or mod:<prime>") from None
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return f"mod:{p}", p


def homology(K, coeff="int") -> BettiTable:
    kind, p = _parse_coeff(coeff)
    C = chain_complex(K)
    top = len(C.bases) - 1
    ranks = [0] * (top + 2)
    torsion = [()] * (top + 1)
    for n in range(1, top + 1):
        cols = C.boundaries[n]
        if kind == "int":
            factors = invariant_factors(cols)
            ranks[n] = len(factors)
            torsion[n - 1] = tuple(f for f in factors if f > 1)
        elif kind == "rat":
            ranks[n] = _rank_rational(cols)
        else:
            ranks[n] = _rank_mod(cols, p)
    betti = tuple(len(C.bases[n]) - ranks[n] - ranks[n + 1] for n in range(top + 1))
    return BettiTable(betti, tuple(torsion), kind)


def euler_characteristic(K) -> int:
    return sum((-1) ** (len(s) - 1) for s in _simplices(K))


# --------------------------------------------------------------------------
# rational subspaces of the chain groups of a common ambient complex


def _chain(s) -> dict:
    return {f: c for f, c in _boundary(s)} if len(s) > 1 else {}


def _of_dim(simplices, n: int) -> list:
    return sorted(s for s in simplices if len(s) == n + 1)


def _boundary_space(simplices, n: int) -> list[dict]:
    """Spanning set of B_n: boundaries of the (n+1)-simplices."""
    return [_chain(s) for s in _of_dim(simplices, n + 1)]


def _cycle_basis(simplices, n: int) -> list[dict]:
    """Basis of Z_n over the rationals."""
    basis = _of_dim(simplices, n)
    if n == 0:
        return [{s: Fraction(1)} for s in basis]
    E = _Echelon()
    out = []
    for s in basis:
        independent, tag = E.add(_chain(s), {s: Fraction(1)})
        if not independent:
            out.append(tag)
    return out


def _span_rank(vectors: Iterable[dict]) -> int:
    return _rank_rational(vectors)


def _homology_basis(simplices, n: int) -> list[dict]:
    """Cycles whose classes form a basis of H_n over the rationals."""
    E = _Echelon()
    for b in _boundary_space(simplices, n):
        E.add(b)
    out = []
    for z in _cycle_basis(simplices, n):
        independent, _ = E.add(z)
        if independent:
            out.append(z)
    return out


def induced_map_rational(L: Subcomplex, dim: int) -> list[list[Fraction]]:
    """Matrix of H_dim(L; Q) -> H_dim(K; Q) for the inclusion of L into its parent K.

    Columns follow the homology basis of L, rows that of K (both as chosen by
    this module deterministically).
    """
    K = L.parent
    if not L.simplices <= K.simplices:
        raise NotSubcomplex("L is not contained in its parent")
    source = _homology_basis(L.simplices, dim)
    target = _homology_basis(K.simplices, dim)
    E = _Echelon()
    for b in _boundary_space(K.simplices, dim):
        E.add(b)
    for j, w in enumerate(target):
        E.add(w, {j: Fraction(1)})
    M = [[Fraction(0)] * len(source) for _ in target]
    for i, z in enumerate(source):
        rest, tag = E.reduce(z)
        if rest:
            raise AssertionError("cycle of L is not a cycle of K")
        # z - Σ tag_j (stored rows) = 0, stored rows are combos of inputs
        for j, c in tag.items():
            M[j][i] = -c
    return M


@dataclass
class MVReport:
    ok: bool
    euler_ok: bool
    failures: list
    ranks: dict

    def __str__(self):
        if self.ok:
            return "Mayer-Vietoris exact in every dimension; Euler identity holds"
        return "; ".join(self.failures)


def mayer_vietoris_check(Y, X_sub, B_sub, A_sub) -> MVReport:
    """Rank exactness of the rational Mayer-Vietoris sequence of Y = X ∪ B, A = X ∩ B.

    The maps are ``f = (i, -j): H(A) -> H(X) ⊕ H(B)``, ``g = i' + j'`` and the
    connecting map ``δ[z] = [∂x]`` where ``z = x + b`` splits a cycle of Y
    into its X-simplices and the rest.  Each spot of the long sequence must
    satisfy rank(in) + rank(out) = dimension.
    """
    Ys, Xs, Bs, As = (_simplices(S) for S in (Y, X_sub, B_sub, A_sub))
    if Xs | Bs != Ys:
        raise DecompositionInvalid("X ∪ B is not Y")
    if Xs & Bs != As:
        raise DecompositionInvalid("X ∩ B is not A")
    for name, S in (("X", Xs), ("B", Bs), ("A", As)):
        for s in S:
            if len(s) > 1 and any(f not in S for f, _ in _boundary(s)):
                raise DecompositionInvalid(f"{name} is not face-closed")

    top = max((len(s) - 1 for s in Ys), default=-1)
    H = {name: [len(_homology_basis(S, n)) for n in range(top + 2)] for name, S in
         (("Y", Ys), ("X", Xs), ("B", Bs), ("A", As))}

    def rank_into(gens: list[dict], boundaries: list[dict]) -> int:
        base = _span_rank(boundaries)
        return _span_rank(boundaries + gens) - base

    rf, rg, rd = {}, {}, {}
    for n in range(top + 2):
        zA = _cycle_basis(As, n) if n <= top else []
        bXB = [{("X", k): v for k, v in b.items()} for b in _boundary_space(Xs, n)] + [
            {("B", k): v for k, v in b.items()} for b in _boundary_space(Bs, n)
        ]
        f_img = [{**{("X", k): v for k, v in z.items()}, **{("B", k): -v for k, v in z.items()}} for z in zA]
        rf[n] = rank_into(f_img, bXB)
        zX = _cycle_basis(Xs, n) if n <= top else []
        zB = _cycle_basis(Bs, n) if n <= top else []
        rg[n] = rank_into(zX + zB, _boundary_space(Ys, n))
        if n == 0:
            rd[n] = 0
            continue
        zY = _cycle_basis(Ys, n) if n <= top else []
        delta = []
        for z in zY:
            d: dict = {}
            for s, c in z.items():
                if s in Xs:
                    for f, e in _boundary(s):
                        d[f] = d.get(f, 0) + c * e
            d = {k: v for k, v in d.items() if v}
            if any(k not in As for k in d):
                raise AssertionError("connecting map left A")
            delta.append(d)
        rd[n] = rank_into(delta, _boundary_space(As, n - 1))

    failures = []
    for n in range(top + 1):
        if rf[n] + rg[n] != H["X"][n] + H["B"][n]:
            failures.append(f"H_{n}(X)⊕H_{n}(B): rank f + rank g = {rf[n] + rg[n]} != {H['X'][n] + H['B'][n]}")
        if rg[n] + rd[n] != H["Y"][n]:
            failures.append(f"H_{n}(Y): rank g + rank δ = {rg[n] + rd[n]} != {H['Y'][n]}")
        if rd[n + 1] + rf[n] != H["A"][n]:
            failures.append(f"H_{n}(A): rank δ + rank f = {rd[n + 1] + rf[n]} != {H['A'][n]}")
    euler_ok = euler_characteristic(Ys) == euler_characteristic(Xs) + euler_characteristic(Bs) - euler_characteristic(As)
    if not euler_ok:
        failures.append("Euler identity fails")
    ranks = {"f": rf, "g": rg, "delta": rd, "betti": H}
    return MVReport(not failures, euler_ok, failures, ranks)
