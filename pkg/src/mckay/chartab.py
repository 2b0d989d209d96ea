"""Exact character tables, tensor multiplicities and McKay graphs.

Character tables are computed by the class-algebra method: the class
multiplication matrices are simultaneously diagonalised over a prime field
F_p with p = 1 (mod exponent) and p > 2*sqrt(|G|), using seeded random
linear combinations to split eigenspaces; eigenvalue data is then lifted to
exact cyclotomic integers through the discrete Fourier inversion of the
power map.  Both orthogonality relations are re-verified exactly before a
table is returned, so a modular accident can never produce a wrong table
silently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .cyclo import CycNum, rational
from .groups import ConjugacyStructure, FiniteGroup

__all__ = [
    "CharacterTable",
    "McKayGraph",
    "CharacterTableError",
    "EigenSplitError",
    "TableConsistencyError",
    "NotAffineADEError",
    "class_multiplication_tensor",
    "character_table",
    "tensor_multiplicity",
    "mckay_graph",
    "classify_affine_ade",
]


class CharacterTableError(RuntimeError):
    pass


class EigenSplitError(CharacterTableError):
    """Random linear combinations failed to separate all eigenspaces."""


class TableConsistencyError(CharacterTableError):
    """An exact cross-check of computed character data failed."""


class NotAffineADEError(ValueError):
    """A graph that should be an affine ADE diagram is not one."""


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Exact irreducible characters of a finite group.

    Row 0 is the trivial character; the remaining rows are sorted by
    (degree, canonical coefficient vectors), which makes the table
    independent of the eigensplitting seed.  ``natural_character`` is the
    trace of the stored 2-dimensional matrix representation (present for
    SL2 subgroups only); it need not be irreducible.
    """

    group: FiniteGroup
    conj: ConjugacyStructure
    rows: tuple[tuple[CycNum, ...], ...]
    degrees: tuple[int, ...]
    natural_character: tuple[CycNum, ...] | None
    prime: int

    @property
    def size(self) -> int:
        return len(self.rows)

    def value(self, row: int, cls: int) -> CycNum:
        return self.rows[row][cls]


def class_multiplication_tensor(group: FiniteGroup):
    """The integers a[i][j][k] = #{(x,y) in C_i x C_j : xy = z}, fixed z in C_k.

    Computed by full enumeration of all |G|^2 products; the count is the
    same for every z in C_k, so the aggregated count must divide by |C_k|,
    which is asserted.
    """
    conj = group.conjugacy
    m = len(conj.classes)
    counts = [[[0] * m for _ in range(m)] for _ in range(m)]
    class_of = conj.class_of
    for x in range(group.order):
        cx = class_of[x]
        row = group.cayley[x]
        cnt = counts[cx]
        for y in range(group.order):
            cnt[class_of[y]][class_of[row[y]]] += 1
    sizes = conj.sizes
    tensor = [[[0] * m for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(m):
            for k in range(m):
                c = counts[i][j][k]
                if c % sizes[k]:
                    raise TableConsistencyError("class product count not class-constant")
                tensor[i][j][k] = c // sizes[k]
    return tuple(tuple(tuple(r) for r in plane) for plane in tensor)


# -- F_p linear algebra -------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _dixon_prime(order: int, exponent: int) -> int:
    bound = 2 * isqrt(order)
    k = 1
    while True:
        p = exponent * k + 1
        if p > bound and _is_prime(p):
            return p
        k += 1


def _primitive_root(p: int) -> int:
    factors = []
    m = p - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    for w in range(2, p):
        if all(pow(w, (p - 1) // q, p) != 1 for q in factors):
            return w
    raise CharacterTableError("no primitive root found")  # unreachable for prime p


def _sqrt_mod(a: int, p: int) -> int | None:
    a %= p
    for s in range(p):
        if s * s % p == a:
            return s
    return None


def _apply(matrix, vec, p):
    return [sum(r * v for r, v in zip(row, vec) if v) % p for row in matrix]


def _rref(rows, p):
    rows = [list(r) for r in rows]
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def _nullspace(matrix, p):
    """Row vectors spanning {v : matrix @ v = 0} over F_p, in rref form."""
    rows, pivots = _rref(matrix, p)
    ncols = len(matrix[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rows[r][fc]) % p
        basis.append(v)
    if basis:
        basis, _ = _rref(basis, p)
    return basis


@dataclass
class _Subspace:
    basis: list  # rref rows
    pivots: list

    @property
    def dim(self):
        return len(self.basis)


def _restriction(op, space: _Subspace, p):
    images = [_apply(op, b, p) for b in space.basis]
    d = space.dim
    coords = [[images[i][space.pivots[j]] for j in range(d)] for i in range(d)]
    # invariance check: the image must stay inside the subspace
    for i in range(d):
        recon = [0] * len(images[i])
        for j in range(d):
            cj = coords[i][j]
            if cj:
                recon = [(a + cj * b) % p for a, b in zip(recon, space.basis[j])]
        if recon != images[i]:
            raise EigenSplitError("subspace not invariant under class operator")
    return coords


def _split_space(space: _Subspace, op, p) -> list[_Subspace]:
    d = space.dim
    # images[i] = sum_j coords[i][j] B_j, so the operator acts on coordinate
    # columns by the transpose of coords
    coords = _restriction(op, space, p)
    coords = [[coords[j][i] for j in range(d)] for i in range(d)]
    out = []
    found = 0
    for lam in range(p):
        shifted = [[(coords[i][j] - (lam if i == j else 0)) % p for j in range(d)] for i in range(d)]
        null = _nullspace(shifted, p)
        if not null:
            continue
        vectors = []
        for coeffs in null:
            v = [0] * len(space.basis[0])
            for j, cj in enumerate(coeffs):
                if cj:
                    v = [(a + cj * b) % p for a, b in zip(v, space.basis[j])]
            vectors.append(v)
        basis, pivots = _rref(vectors, p)
        out.append(_Subspace(basis, pivots))
        found += len(basis)
        if found == d:
            break
    if found != d:
        raise EigenSplitError("eigenspace dimensions do not add up")
    return out


def _common_eigenvectors(matrices, p, seed, attempts=32):
    m = len(matrices)
    full = _Subspace([[1 if i == j else 0 for j in range(m)] for i in range(m)], list(range(m)))
    spaces = [full]
    rng = random.Random(seed)
    for _ in range(attempts):
        if all(s.dim == 1 for s in spaces):
            break
        coeffs = [rng.randrange(p) for _ in range(m)]
        op = [
            [sum(coeffs[t] * matrices[t][r][c] for t in range(m)) % p for c in range(m)]
            for r in range(m)
        ]
        spaces = [
            sub
            for s in spaces
            for sub in ([s] if s.dim == 1 else _split_space(s, op, p))
        ]
    else:
        raise EigenSplitError(
            f"failed to split eigenspaces after {attempts} seeded attempts"
        )
    return [s.basis[0] for s in spaces]


# -- character recovery -------------------------------------------------------


def _power_map(group: FiniteGroup, conj: ConjugacyStructure):
    pm = []
    for rep in conj.representatives:
        d = group.element_order[rep]
        row = []
        x = 0
        for _ in range(d):
            row.append(conj.class_of[x])
            x = group.cayley[x][rep]
        pm.append(row)
    return pm


def _lift_row(chi_mod, degree, group, conj, pm, z, exponent, p):
    values = []
    for j, rep in enumerate(conj.representatives):
        d = group.element_order[rep]
        zj = pow(z, exponent // d, p)
        zj_inv = pow(zj, p - 2, p)
        d_inv = pow(d, p - 2, p)
        mults = {}
        for t in range(d):
            acc = 0
            for u in range(d):
                acc = (acc + chi_mod[pm[j][u]] * pow(zj_inv, t * u, p)) % p
            m_t = (acc * d_inv) % p
            if m_t > degree:
                raise TableConsistencyError("eigenvalue multiplicity out of range")
            if m_t:
                mults[t] = m_t
        if sum(mults.values()) != degree:
            raise TableConsistencyError("eigenvalue multiplicities do not sum to degree")
        # consistency: the lifted value must reproduce chi mod p
        check = sum(m * pow(zj, t, p) for t, m in mults.items()) % p
        if check != chi_mod[j] % p:
            raise TableConsistencyError("lifted character does not match modular data")
        values.append(CycNum(d, mults))
    return tuple(values)


def _row_sort_key(row, degree, exponent):
    flat = []
    for v in row:
        for c in v.lift(exponent).coeffs:
            flat.append(c)
    return (degree, tuple(flat))


def _verify_orthogonality(rows, conj, order):
    m = len(rows)
    sizes = conj.sizes
    conj_rows = [tuple(v.conj() for v in row) for row in rows]
    for i in range(m):
        for j in range(i, m):
            acc = rational(0)
            for c in range(m):
                term = rows[i][c] * conj_rows[j][c]
                acc = acc + term * sizes[c]
            expected = order if i == j else 0
            if acc.as_rational() != expected:
                raise TableConsistencyError(f"row orthogonality fails at ({i}, {j})")
    for c in range(m):
        for c2 in range(c, m):
            acc = rational(0)
            for i in range(m):
                acc = acc + rows[i][c] * conj_rows[i][c2]
            expected = Fraction(order, sizes[c]) if c == c2 else 0
            if acc.as_rational() != expected:
                raise TableConsistencyError(f"column orthogonality fails at ({c}, {c2})")


def character_table(group: FiniteGroup, seed: int = 0) -> CharacterTable:
    """The exact character table of a finite group.

    The splitting of modular eigenspaces is randomised from ``seed``; the
    returned table does not depend on the seed (canonical row order, fixed
    prime and primitive root).
    """
    conj = group.conjugacy
    m = len(conj.classes)
    order = group.order
    exponent = conj.exponent
    tensor = class_multiplication_tensor(group)
    # matrices[i][k][j] = a_{ijk}: multiplication by the i-th class sum
    matrices = [
        [[tensor[i][j][k] for j in range(m)] for k in range(m)] for i in range(m)
    ]
    p = _dixon_prime(order, exponent)
    z = pow(_primitive_root(p), (p - 1) // exponent, p)
    vectors = _common_eigenvectors(matrices, p, seed)
    if len(vectors) != m:
        raise EigenSplitError("wrong number of common eigenvectors")
    pm = _power_map(group, conj)
    inv_sizes = [pow(s, p - 2, p) for s in conj.sizes]
    rows = []
    degrees = []
    for v in vectors:
        if v[0] == 0:
            raise TableConsistencyError("eigenvector vanishes on the identity class")
        norm = pow(v[0], p - 2, p)
        v = [x * norm % p for x in v]
        omega = [_apply(matrices[i], v, p)[0] % p for i in range(m)]
        s = sum(omega[i] * omega[conj.class_inverse[i]] * inv_sizes[i] for i in range(m)) % p
        if s == 0:
            raise TableConsistencyError("degenerate norm sum in degree recovery")
        d2 = order * pow(s, p - 2, p) % p
        root = _sqrt_mod(d2, p)
        if root is None:
            raise TableConsistencyError("degree square has no modular root")
        degree = min(root, p - root)
        chi_mod = [degree * omega[i] * inv_sizes[i] % p for i in range(m)]
        rows.append(_lift_row(chi_mod, degree, group, conj, pm, z, exponent, p))
        degrees.append(degree)
    if sum(d * d for d in degrees) != order:
        raise TableConsistencyError("degrees do not satisfy the order sum rule")
    trivial = [i for i, row in enumerate(rows) if all(v.as_rational() == 1 for v in row)]
    if len(trivial) != 1:
        raise TableConsistencyError("trivial character missing or duplicated")
    order_keys = sorted(
        (i for i in range(m) if i != trivial[0]),
        key=lambda i: _row_sort_key(rows[i], degrees[i], exponent),
    )
    perm = [trivial[0]] + order_keys
    rows = tuple(rows[i] for i in perm)
    degrees = tuple(degrees[i] for i in perm)
    _verify_orthogonality(rows, conj, order)
    natural = None
    if group.matrix_rep is not None:
        natural = tuple(group.trace(rep) for rep in conj.representatives)
    return CharacterTable(
        group=group,
        conj=conj,
        rows=rows,
        degrees=degrees,
        natural_character=natural,
        prime=p,
    )


def _inner_multiplicity(table: CharacterTable, left_values, right_row: int) -> int:
    conj = table.conj
    acc = rational(0)
    for c in range(table.size):
        term = left_values[c] * table.rows[right_row][c].conj()
        acc = acc + term * conj.sizes[c]
    value = acc.as_rational()
    if value is None:
        raise TableConsistencyError("inner product is not rational")
    q = value / table.group.order
    if q.denominator != 1 or q < 0:
        raise TableConsistencyError("tensor multiplicity is not a nonnegative integer")
    return int(q)


def tensor_multiplicity(table: CharacterTable, i: int, j: int, k: int) -> int:
    """Multiplicity of the k-th irreducible in the tensor product of i and j."""
    values = tuple(table.rows[i][c] * table.rows[j][c] for c in range(table.size))
    return _inner_multiplicity(table, values, k)


@dataclass(frozen=True, eq=False)
class McKayGraph:
    """Irreducibles joined by tensor multiplicities with the natural character."""

    adjacency: tuple[tuple[int, ...], ...]
    dims: tuple[int, ...]
    trivial_vertex: int
    affine_label: str
    finite_label: str

    @property
    def size(self) -> int:
        return len(self.dims)


def mckay_graph(table: CharacterTable) -> McKayGraph:
    """Graph on all irreducibles with edges <rho_i (x) natural, rho_j>."""
    if table.natural_character is None:
        raise CharacterTableError("group carries no natural 2-dimensional character")
    m = table.size
    adjacency = [[0] * m for _ in range(m)]
    for i in range(m):
        values = tuple(
            table.rows[i][c] * table.natural_character[c] for c in range(m)
        )
        for j in range(m):
            adjacency[i][j] = _inner_multiplicity(table, values, j)
    for i in range(m):
        if adjacency[i][i] != 0:
            raise TableConsistencyError("McKay graph has a loop")
        for j in range(m):
            if adjacency[i][j] != adjacency[j][i]:
                raise TableConsistencyError("McKay graph adjacency is not symmetric")
    adj = tuple(tuple(row) for row in adjacency)
    label = classify_affine_ade(adj, table.degrees, trivial_vertex=0)
    return McKayGraph(
        adjacency=adj,
        dims=table.degrees,
        trivial_vertex=0,
        affine_label=label,
        finite_label=label,
    )


# -- affine ADE recognition ---------------------------------------------------


def _ref_star(arms):
    """Adjacency of a star with the given arm lengths (in edges)."""
    n = 1 + sum(arms)
    adj = [[0] * n for _ in range(n)]
    idx = 1
    for arm in arms:
        prev = 0
        for _ in range(arm):
            adj[prev][idx] = adj[idx][prev] = 1
            prev = idx
            idx += 1
    return adj


def _ref_affine(kind: str, rank: int):
    if kind == "A":
        if rank == 1:
            return [[0, 2], [2, 0]], (1, 1)
        n = rank + 1
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            j = (i + 1) % n
            adj[i][j] = adj[j][i] = 1
        return adj, tuple([1] * n)
    if kind == "D":
        n = rank + 1
        adj = [[0] * n for _ in range(n)]
        # spine 1 .. rank-3 carries mark 2; four mark-1 leaves at the ends
        spine = list(range(1, rank - 2))
        for a, b in zip(spine, spine[1:]):
            adj[a][b] = adj[b][a] = 1
        first, last = spine[0], spine[-1]
        adj[0][first] = adj[first][0] = 1
        adj[rank - 2][last] = adj[last][rank - 2] = 1
        adj[rank - 1][last] = adj[last][rank - 1] = 1
        adj[rank][first] = adj[first][rank] = 1
        marks = [2] * n
        for leaf in (0, rank - 2, rank - 1, rank):
            marks[leaf] = 1
        return adj, tuple(marks)
    arms = {6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}[rank]
    center_mark = {6: 3, 7: 4, 8: 6}[rank]
    adj = _ref_star(arms)
    marks = [center_mark]
    for arm in arms:
        for pos in range(1, arm + 1):
            marks.append(center_mark * (arm + 1 - pos) // (arm + 1))
    return adj, tuple(marks)


def _ref_finite(kind: str, rank: int):
    if kind == "A":
        adj = [[0] * rank for _ in range(rank)]
        for i in range(rank - 1):
            adj[i][i + 1] = adj[i + 1][i] = 1
        return adj
    if kind == "D":
        adj = [[0] * rank for _ in range(rank)]
        for i in range(rank - 3):
            adj[i][i + 1] = adj[i + 1][i] = 1
        adj[rank - 2][rank - 3] = adj[rank - 3][rank - 2] = 1
        adj[rank - 1][rank - 3] = adj[rank - 3][rank - 1] = 1
        return adj
    arms = {6: (1, 2, 2), 7: (1, 2, 3), 8: (1, 2, 4)}[rank]
    return _ref_star(arms)


def _isomorphic(adj_a, weights_a, adj_b, weights_b) -> bool:
    n = len(adj_a)
    if len(adj_b) != n:
        return False

    def profile(adj, weights, v):
        deg = sum(adj[v])
        return (deg, weights[v] if weights else 0)

    if sorted(profile(adj_a, weights_a, v) for v in range(n)) != sorted(
        profile(adj_b, weights_b, v) for v in range(n)
    ):
        return False
    mapping = [-1] * n
    used = [False] * n

    def backtrack(v):
        if v == n:
            return True
        pa = profile(adj_a, weights_a, v)
        for w in range(n):
            if used[w] or profile(adj_b, weights_b, w) != pa:
                continue
            ok = True
            for u in range(v):
                if adj_a[v][u] != adj_b[w][mapping[u]]:
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if backtrack(v + 1):
                    return True
                used[w] = False
        return False

    return backtrack(0)


def classify_affine_ade(adjacency, dims, trivial_vertex: int = 0) -> str:
    """Recognise an affine ADE diagram with its null-vector labels.

    Returns the type label (e.g. "D4"); the deletion of ``trivial_vertex``
    is checked to be the finite diagram of the same type.  Raises
    NotAffineADEError if the graph is not an affine ADE diagram with the
    expected multiplicities.
    """
    n = len(adjacency)
    dims = tuple(dims)
    for i in range(n):
        for j in range(n):
            if adjacency[i][j] != adjacency[j][i] or adjacency[i][j] < 0:
                raise NotAffineADEError("adjacency must be symmetric and nonnegative")
    # connectivity
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in range(n):
            if adjacency[v][w] and w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise NotAffineADEError("graph is not connected")
    degrees = [sum(adjacency[v]) for v in range(n)]
    if n == 2 and adjacency[0][1] == 2:
        kind, rank = "A", 1
    elif max(adjacency[v][w] for v in range(n) for w in range(n)) > 1:
        raise NotAffineADEError("unexpected edge multiplicity")
    elif all(d == 2 for d in degrees):
        if n < 3:
            raise NotAffineADEError("not an affine ADE diagram")
        kind, rank = "A", n - 1
    elif degrees.count(4) == 1 and degrees.count(1) == 4 and n == 5:
        kind, rank = "D", 4
    elif degrees.count(3) == 2 and degrees.count(1) == 4 and n >= 6:
        kind, rank = "D", n - 1
    elif degrees.count(3) == 1 and degrees.count(1) == 3:
        center = degrees.index(3)
        arms = []
        for w in range(n):
            if not adjacency[center][w]:
                continue
            length, prev, cur = 1, center, w
            while sum(adjacency[cur]) == 2:
                nxt = next(x for x in range(n) if adjacency[cur][x] and x != prev)
                prev, cur = cur, nxt
                length += 1
            arms.append(length)
        key = tuple(sorted(arms))
        ranks = {(2, 2, 2): 6, (1, 3, 3): 7, (1, 2, 5): 8}
        if key not in ranks:
            raise NotAffineADEError("not an affine ADE diagram")
        kind, rank = "E", ranks[key]
    else:
        raise NotAffineADEError("not an affine ADE diagram")
    ref_adj, ref_marks = _ref_affine(kind, rank)
    if not _isomorphic(adjacency, dims, ref_adj, ref_marks):
        raise NotAffineADEError(
            f"graph shaped like affine {kind}{rank} but labels do not match its null vector"
        )
    rest = [v for v in range(n) if v != trivial_vertex]
    sub = [[adjacency[v][w] for w in rest] for v in rest]
    if not _isomorphic(sub, None, _ref_finite(kind, rank), None):
        raise NotAffineADEError(
            f"deleting the marked vertex does not give the finite {kind}{rank} diagram"
        )
    return f"{kind}{rank}"
