"""Finite-group machinery: catalog constructors for groups of order p*q^2,
subgroup analysis, orthogonal idempotents and bicharacters of finite abelian
groups.

Groups are explicit multiplication tables on ids 0..n-1 with id 0 the
identity.  Every constructed table is verified (associativity, identity,
inverses) and each catalog constructor additionally checks its defining
relations, so a bad parameter can never produce a silently wrong group.
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np

from .exactfield import CycloNumber, zeta


class ParameterError(ValueError):
    """Raised when constructor parameters violate a stated condition."""


# ---------------------------------------------------------------------------


class FiniteGroup:
    def __init__(self, table, labels=None, generators=None, family_tag=None,
                 states=None, verify=True):
        self.table = np.asarray(table, dtype=np.int32)
        n = self.table.shape[0]
        if self.table.shape != (n, n):
            raise ParameterError("multiplication table must be square")
        self.order = n
        self.labels = list(labels) if labels else [f"x{i}" for i in range(n)]
        self.generators = dict(generators or {})
        self.family_tag = family_tag
        self.states = states
        if verify:
            self._verify_table()
        self.inverse = np.empty(n, dtype=np.int32)
        for i in range(n):
            js = np.nonzero(self.table[i] == 0)[0]
            assert len(js) == 1, "no unique inverse"
            self.inverse[i] = js[0]

    def _verify_table(self):
        t = self.table
        n = self.order
        if not (np.all(t[0] == np.arange(n)) and np.all(t[:, 0] == np.arange(n))):
            raise ParameterError("id 0 is not a two-sided identity")
        for i in range(n):
            # (i*j)*k == i*(j*k) for all j, k
            if not np.array_equal(t[t[i]], t[i][t]):
                raise ParameterError("multiplication table is not associative")
        for i in range(n):
            if 0 not in t[i]:
                raise ParameterError(f"element {i} has no inverse")

    # -- basic operations

    def mul(self, i, j):
        return int(self.table[i, j])

    def inv(self, i):
        return int(self.inverse[i])

    def power(self, i, k):
        if k < 0:
            i, k = self.inv(i), -k
        out, base = 0, i
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def order_of(self, i):
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        return k

    def conjugate(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))

    def label(self, i):
        return self.labels[i]

    def element_by_label(self, name):
        return self.labels.index(name)

    def word(self, letters):
        """Product of named generators, e.g. word("a", "b", ("a", -1))."""
        out = 0
        for item in letters:
            if isinstance(item, tuple):
                name, k = item
                out = self.mul(out, self.power(self.generators[name], k))
            else:
                out = self.mul(out, self.generators[item])
        return out

    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    def center(self):
        t = self.table
        return [i for i in range(self.order) if np.array_equal(t[i], t[:, i])]

    def conjugacy_classes(self):
        seen = [False] * self.order
        classes = []
        for i in range(self.order):
            if seen[i]:
                continue
            cl = {self.conjugate(g, i) for g in range(self.order)}
            for x in cl:
                seen[x] = True
            classes.append(sorted(cl))
        return classes

    def subgroup_closure(self, gens):
        out = {0}
        frontier = list(set(gens) | {0})
        while frontier:
            new = []
            for x in frontier:
                for y in list(out):
                    for z in (self.mul(x, y), self.mul(y, x)):
                        if z not in out:
                            out.add(z)
                            new.append(z)
            frontier = new
        return frozenset(out)

    def is_normal(self, ids):
        s = set(ids)
        return all(self.conjugate(g, x) in s for g in range(self.order) for x in s)

    def is_abelian_subset(self, ids):
        ids = list(ids)
        return all(
            self.mul(x, y) == self.mul(y, x) for x in ids for y in ids
        )

    # -- plain-text multiplication-table format

    def to_table_text(self):
        lines = [f"order {self.order}"]
        for row in self.table:
            lines.append(" ".join(str(int(x)) for x in row))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_table_text(text, **kw):
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        head = lines[0].split()
        if len(head) != 2 or head[0] != "order":
            raise ValueError("expected header 'order n'")
        n = int(head[1])
        if len(lines) != n + 1:
            raise ValueError(f"expected {n} table rows, got {len(lines) - 1}")
        table = [[int(x) for x in ln.split()] for ln in lines[1:]]
        return FiniteGroup(table, **kw)

    def __repr__(self):
        tag = f" {self.family_tag}" if self.family_tag else ""
        return f"<FiniteGroup order={self.order}{tag}>"


# ---------------------------------------------------------------------------
# catalog constructors


def _group_from_states(states, op, labels, generators, tag, relations=()):
    index = {s: i for i, s in enumerate(states)}
    assert len(index) == len(states)
    n = len(states)
    table = [[index[op(states[i], states[j])] for j in range(n)] for i in range(n)]
    G = FiniteGroup(table, labels=labels, generators=generators, family_tag=tag,
                    states=list(states))
    for lhs, rhs in relations:
        if G.word(lhs) != G.word(rhs):
            raise ParameterError(f"defining relation {lhs} = {rhs} fails for {tag}")
    return G


def _mono_label(sym_powers):
    parts = [f"{s}^{k}" for s, k in sym_powers if k]
    return "1" if not parts else "".join(parts)


def cyclic_group(n, sym="g", tag=None):
    states = list(range(n))
    return _group_from_states(
        states, lambda a, b: (a + b) % n,
        [_mono_label([(sym, i)]) for i in states],
        {sym: 1 % n}, tag or f"Z{n}")


def abelian_group(orders, syms=None, tag=None):
    syms = syms or [chr(ord("a") + i) for i in range(len(orders))]
    states = list(product(*[range(m) for m in orders]))
    def op(x, y):
        return tuple((u + v) % m for u, v, m in zip(x, y, orders))
    gens = {}
    for i, s in enumerate(syms):
        e = tuple(1 if j == i else 0 for j in range(len(orders)))
        gens[s] = states.index(e)
    labels = [_mono_label(list(zip(syms, st))) for st in states]
    return _group_from_states(states, op, labels, gens, tag or "x".join(f"Z{m}" for m in orders))


def _check_mult_order(m, modulus, exponent, name="m"):
    m %= modulus
    if math.gcd(m, modulus) != 1:
        raise ParameterError(f"{name} must be invertible mod {modulus}")
    if pow(m, exponent, modulus) != 1:
        raise ParameterError(f"{name}^{exponent} != 1 (mod {modulus})")
    if m == 1:
        raise ParameterError(f"{name} == 1 (mod {modulus})")


def semidirect_pq(p, q, t):
    """Z_p x| Z_q = <a, b | a^p = b^q = 1, b a b^-1 = a^t>."""
    _check_primes(p, q)
    _check_mult_order(t, p, q, "t")
    states = list(product(range(p), range(q)))
    def op(x, y):
        return ((x[0] + pow(t, x[1], p) * y[0]) % p, (x[1] + y[1]) % q)
    labels = [_mono_label([("a", i), ("b", j)]) for i, j in states]
    return _group_from_states(
        states, op, labels, {"a": states.index((1, 0)), "b": states.index((0, 1))},
        f"Z{p}:Z{q}",
        relations=[((("a", p),), ()), ((("b", q),), ()),
                   (("b", "a", ("b", -1)), (("a", t % p),))])


def _check_primes(p, q):
    def is_prime(n):
        return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))
    if not (is_prime(p) and is_prime(q)):
        raise ParameterError("p and q must be prime")
    if p == q:
        raise ParameterError("p and q must be distinct")
    if p == 2 or q == 2:
        raise ParameterError("p and q must be odd")


def _two_gen_action_group(p, q, alpha, beta, tag, relations):
    # (Z_q x Z_q) x| Z_p with u acting diagonally: s -> s^alpha, t -> t^beta
    states = [((i, j), k) for k in range(p) for i in range(q) for j in range(q)]
    def op(x, y):
        (i, j), k = x
        (i2, j2), k2 = y
        a = pow(alpha, k, q)
        b = pow(beta, k, q)
        return (((i + a * i2) % q, (j + b * j2) % q), (k + k2) % p)
    states.sort()
    labels = [_mono_label([("s", i), ("t", j), ("u", k)]) for (i, j), k in states]
    gens = {"s": states.index(((1, 0), 0)), "t": states.index(((0, 1), 0)),
            "u": states.index(((0, 0), 1))}
    return _group_from_states(states, op, labels, gens, tag, relations)


def _beta3(p, q, m):
    _check_mult_order(m, q * q, p, "m")
    states = list(product(range(q * q), range(p)))
    def op(x, y):
        return ((x[0] + pow(m, x[1], q * q) * y[0]) % (q * q), (x[1] + y[1]) % p)
    labels = [_mono_label([("s", i), ("t", j)]) for i, j in states]
    return _group_from_states(
        states, op, labels,
        {"s": states.index((1, 0)), "t": states.index((0, 1))}, "beta3",
        relations=[(("t", "s", ("t", -1)), (("s", m % (q * q)),))])


def _beta7(p, q, m, n):
    # u acts on <s, t> = Z_q x Z_q by s -> t, t -> s^m t^n; the action must
    # have order exactly p and admit no eigenvector (irreducible char poly),
    # otherwise the pair (m, n) does not realize this isomorphism type
    if (q + 1) % p:
        raise ParameterError("beta7 requires p | (q+1)")
    m %= q
    n %= q
    mat = np.array([[0, m], [1, n]], dtype=object)
    power = np.eye(2, dtype=object)
    for _ in range(p):
        power = (power @ mat) % q
    if not np.array_equal(power, np.eye(2, dtype=object) % q):
        raise ParameterError(f"action matrix for (m={m}, n={n}) does not have order dividing {p}")
    if m == 0 or np.array_equal(mat % q, np.eye(2, dtype=object) % q):
        raise ParameterError("action matrix is singular or trivial")
    # char poly x^2 - n x - m must have no root mod q
    if any((x * x - n * x - m) % q == 0 for x in range(q)):
        raise ParameterError(f"x^2 - {n}x - {m} has a root mod {q}; not the irreducible type")
    states = [((i, j), k) for k in range(p) for i in range(q) for j in range(q)]
    states.sort()
    def act(v, k):
        i, j = v
        for _ in range(k):
            i, j = (m * j) % q, (i + n * j) % q
        return (i, j)
    def op(x, y):
        (v, k), (v2, k2) = x, y
        w = act(v2, k)
        return (((v[0] + w[0]) % q, (v[1] + w[1]) % q), (k + k2) % p)
    labels = [_mono_label([("s", i), ("t", j), ("u", k)]) for (i, j), k in states]
    gens = {"s": states.index(((1, 0), 0)), "t": states.index(((0, 1), 0)),
            "u": states.index(((0, 0), 1))}
    return _group_from_states(
        states, op, labels, gens, "beta7",
        relations=[(("u", "s", ("u", -1)), ("t",)),
                   (("u", "t", ("u", -1)), (("s", m), ("t", n)))])


def beta7_default_params(p, q):
    """Smallest (m, n) realizing the beta7 action, found by search."""
    for m in range(1, q):
        for n in range(q):
            try:
                _beta7(p, q, m, n)
                return m, n
            except ParameterError:
                continue
    raise ParameterError(f"no beta7 parameters exist for p={p}, q={q}")


def _gamma34(p, q, m, tag):
    states = list(product(range(p), range(q * q)))
    def op(x, y):
        return ((x[0] + pow(m, x[1], p) * y[0]) % p, (x[1] + y[1]) % (q * q))
    labels = [_mono_label([("s", i), ("t", j)]) for i, j in states]
    return _group_from_states(
        states, op, labels,
        {"s": states.index((1, 0)), "t": states.index((0, 1))}, tag,
        relations=[(("t", "s", ("t", -1)), (("s", m % p),))])


def _gamma56(p, q, m_t, m_u, tag):
    # s of order p; t, u of order q acting on s by s -> s^(m_t), s -> s^(m_u)
    states = [(i, (j, k)) for j in range(q) for k in range(q) for i in range(p)]
    states.sort()
    def op(x, y):
        i, (j, k) = x
        i2, (j2, k2) = y
        c = (pow(m_t, j, p) * pow(m_u, k, p)) % p
        return ((i + c * i2) % p, ((j + j2) % q, (k + k2) % q))
    labels = [_mono_label([("s", i), ("t", j), ("u", k)]) for i, (j, k) in states]
    gens = {"s": states.index((1, (0, 0))), "t": states.index((0, (1, 0))),
            "u": states.index((0, (0, 1)))}
    rel = [(("t", "u", ("t", -1)), ("u",)),
           (("t", "s", ("t", -1)), (("s", m_t % p),)),
           (("u", "s", ("u", -1)), (("s", m_u % p),))]
    return _group_from_states(states, op, labels, gens, tag, rel)


def build_group(family: str, **params) -> FiniteGroup:
    """Construct a catalog group; raises ParameterError naming any violated
    condition.  Families: beta1..beta7, gamma1..gamma6, cyclic, abelian,
    semidirect_pq, custom (explicit table)."""
    G = _build_group(family, params)
    G.params = dict(params)
    return G


def _build_group(family: str, params) -> FiniteGroup:
    fam = family.lower()
    p = params.get("p")
    q = params.get("q")
    if fam in {"beta1", "gamma1"}:
        _check_primes(p, q)
        return cyclic_group(p * q * q, tag=fam)
    if fam in {"beta2", "gamma2"}:
        _check_primes(p, q)
        G = abelian_group([p, q, q], syms=["c", "s", "t"], tag=fam)
        return G
    if fam == "beta3":
        _check_primes(p, q)
        if q < p:
            raise ParameterError("beta families require q > p")
        return _beta3(p, q, params["m"])
    if fam in {"beta4", "beta5", "beta6"}:
        _check_primes(p, q)
        if q < p:
            raise ParameterError("beta families require q > p")
        m = params["m"]
        _check_mult_order(m, q, p, "m")
        if fam == "beta4":
            return _two_gen_action_group(
                p, q, 1, m, fam,
                relations=[(("t", "s", ("t", -1)), ("s",)),
                           (("u", "s", ("u", -1)), ("s",)),
                           (("u", "t", ("u", -1)), (("t", m % q),))])
        if fam == "beta5":
            return _two_gen_action_group(
                p, q, m, m, fam,
                relations=[(("u", "s", ("u", -1)), (("s", m % q),)),
                           (("u", "t", ("u", -1)), (("t", m % q),))])
        n = params["n"]
        _check_mult_order(n, q, p, "n")
        if (m - n) % q == 0:
            raise ParameterError("beta6 requires m != n (mod q)")
        return _two_gen_action_group(
            p, q, m, n, fam,
            relations=[(("u", "s", ("u", -1)), (("s", m % q),)),
                       (("u", "t", ("u", -1)), (("t", n % q),))])
    if fam == "beta7":
        _check_primes(p, q)
        if q < p:
            raise ParameterError("beta families require q > p")
        m = params.get("m")
        n = params.get("n")
        if m is None or n is None:
            m, n = beta7_default_params(p, q)
            params["m"], params["n"] = m, n
        return _beta7(p, q, m, n)
    if fam == "gamma3":
        _check_primes(p, q)
        if q > p:
            raise ParameterError("gamma families require q < p")
        m = params["m"]
        _check_mult_order(m, p, q, "m")
        return _gamma34(p, q, m, fam)
    if fam == "gamma4":
        _check_primes(p, q)
        if q > p:
            raise ParameterError("gamma families require q < p")
        m = params["m"] % p
        if pow(m, q * q, p) != 1:
            raise ParameterError(f"m^(q^2) != 1 (mod {p})")
        if pow(m, q, p) == 1:
            raise ParameterError(f"m^q == 1 (mod {p})")
        return _gamma34(p, q, m, fam)
    if fam in {"gamma5", "gamma6"}:
        _check_primes(p, q)
        if q > p:
            raise ParameterError("gamma families require q < p")
        m = params["m"]
        _check_mult_order(m, p, q, "m")
        if fam == "gamma5":
            return _gamma56(p, q, 1, m, fam)
        n = params["n"]
        _check_mult_order(n, p, q, "n")
        if (m - n) % p == 0:
            raise ParameterError("gamma6 requires m != n (mod p)")
        return _gamma56(p, q, m, n, fam)
    if fam == "semidirect_pq":
        return semidirect_pq(p, q, params["t"])
    if fam == "cyclic":
        return cyclic_group(params["n"])
    if fam == "abelian":
        return abelian_group(params["orders"])
    if fam == "custom":
        return FiniteGroup(params["table"], labels=params.get("labels"),
                           generators=params.get("generators"), family_tag="custom")
    raise ParameterError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# abelian structure


class AbelianDecomposition:
    """An abelian subgroup with an independent generating set.

    ``gens``/``orders`` give an internal direct-product decomposition; every
    element of the subgroup has a unique exponent vector, which is verified by
    enumeration on construction.
    """

    def __init__(self, group: FiniteGroup, ids, gens, orders):
        self.group = group
        self.ids = tuple(sorted(ids))
        self.gens = list(gens)
        self.orders = list(orders)
        self.elements = []
        self.exponents = {}
        for vec in product(*[range(m) for m in orders]):
            x = 0
            for g, k in zip(gens, vec):
                x = group.mul(x, group.power(g, k))
            if x in self.exponents:
                raise ValueError("generators are not independent")
            self.exponents[x] = vec
            self.elements.append(x)
        if set(self.elements) != set(self.ids):
            raise ValueError("generators do not span the subgroup")

    @property
    def order(self):
        return len(self.ids)

    def exponent_of(self, x):
        return self.exponents[x]

    def element_of(self, vec):
        x = 0
        for g, k in zip(self.gens, vec):
            x = self.group.mul(x, self.group.power(g, k))
        return x

    def __repr__(self):
        return f"<AbelianDecomposition orders={self.orders}>"


def abelian_decomposition(G: FiniteGroup, ids) -> AbelianDecomposition:
    """Decompose an abelian subgroup into independent cyclic factors."""
    ids = sorted(set(ids))
    if not G.is_abelian_subset(ids):
        raise ValueError("subset is not abelian")
    if ids == [0]:
        return AbelianDecomposition(G, ids, [], [])
    target = len(ids)
    by_order = sorted((x for x in ids if x), key=lambda x: (-G.order_of(x), x))
    gens, orders = [], []
    span = {0}
    for x in by_order:
        if x in span:
            continue
        trial_gens = gens + [x]
        closure = G.subgroup_closure(trial_gens)
        if len(closure) == len(span) * G.order_of(x):
            gens.append(x)
            orders.append(G.order_of(x))
            span = closure
            if len(span) == target:
                break
    if len(span) != target:
        raise ValueError("could not find an independent generating set")
    return AbelianDecomposition(G, ids, gens, orders)


class Subgroup:
    def __init__(self, group, ids, decomposition=None):
        self.group = group
        self.ids = tuple(sorted(ids))
        self.decomposition = decomposition

    def __len__(self):
        return len(self.ids)

    def __contains__(self, x):
        return x in set(self.ids)

    def __repr__(self):
        return f"<Subgroup order={len(self.ids)}>"


def abelian_normal_subgroups(G: FiniteGroup):
    """All abelian normal subgroups, as frozensets of ids.

    Seeds are subgroup closures of single conjugacy classes; the collection
    is then saturated under joins of commuting members.
    """
    found = set()
    for cl in G.conjugacy_classes():
        sub = G.subgroup_closure(cl)
        if G.is_abelian_subset(sub) and G.is_normal(sub):
            found.add(sub)
    found.add(frozenset({0}))
    changed = True
    while changed:
        changed = False
        items = sorted(found, key=sorted)
        for i, a in enumerate(items):
            for b in items[i + 1:]:
                if a <= b or b <= a:
                    continue
                join = G.subgroup_closure(a | b)
                if join not in found and G.is_abelian_subset(join):
                    found.add(join)
                    changed = True
    return found


def largest_abelian_normal(G: FiniteGroup) -> Subgroup:
    """The unique abelian normal subgroup containing all others."""
    if G.is_abelian():
        raise ParameterError("group is abelian; the largest abelian normal subgroup is the group itself")
    subs = [s for s in abelian_normal_subgroups(G) if len(s) > 1]
    if not subs:
        raise ParameterError("no nontrivial abelian normal subgroup")
    maximal = [s for s in subs if not any(s < t for t in subs)]
    if len(maximal) != 1:
        raise ParameterError("no largest abelian normal subgroup")
    ids = maximal[0]
    return Subgroup(G, ids, abelian_decomposition(G, ids))


# ---------------------------------------------------------------------------
# idempotents and conjugation


def idempotents(K: AbelianDecomposition):
    """Orthogonal primitive idempotents of the group algebra of K, indexed by
    the elements of K via the pairing <g_i, g_j> = zeta_(n_i)^(delta_ij).

    Returns a list aligned with ``K.elements``; entry k is a dict mapping
    group-element id to CycloNumber.
    """
    order = K.order
    if order == 1:
        return [{0: CycloNumber.one()}]
    conductor = math.lcm(*K.orders)
    inv_order = CycloNumber.from_rational(1) / order
    out = []
    for k in K.elements:
        kv = K.exponent_of(k)
        vec = {}
        for x in K.elements:
            xv = K.exponent_of(x)
            e = 0
            for ki, xi, ni in zip(kv, xv, K.orders):
                e += ki * xi * (conductor // ni)
            vec[x] = inv_order * zeta(conductor, e)
        out.append(vec)
    return out


def conjugation_map(G: FiniteGroup, g, K):
    """The permutation k -> phi_g(k) of K induced on idempotent indices.

    Computed by conjugating each idempotent with actual group-algebra
    products and matching the result against the idempotent basis, so it is
    independent of the duality convention.  K may be a Subgroup or an
    AbelianDecomposition.  Raises if g does not normalize K.
    """
    dec = K.decomposition if isinstance(K, Subgroup) else K
    ids = set(dec.ids)
    for x in ids:
        if G.conjugate(g, x) not in ids:
            raise ParameterError("element does not normalize the subgroup")
    basis = idempotents(dec)
    ginv = G.inv(g)
    perm = []
    for vec in basis:
        conj = {G.mul(G.mul(g, x), ginv): c for x, c in vec.items()}
        for j, cand in enumerate(basis):
            if conj.keys() == cand.keys() and all(conj[x] == cand[x] for x in conj):
                perm.append(j)
                break
        else:
            raise RuntimeError("conjugated idempotent not in basis")
    return perm


# ---------------------------------------------------------------------------
# bicharacters


class Bicharacter:
    """A bicharacter on an abelian group, stored by generator-pair values.

    ``exps[i][j]`` is the exponent of w(g_i, g_j) as a power of the root of
    unity of order gcd(n_i, n_j); values extend biadditively in the exponent
    vectors.
    """

    def __init__(self, domain: AbelianDecomposition, exps):
        self.domain = domain
        self.exps = [list(row) for row in exps]
        r = len(domain.orders)
        self.pair_orders = [
            [math.gcd(domain.orders[i], domain.orders[j]) for j in range(r)]
            for i in range(r)
        ]
        self.conductor = math.lcm(1, *(o for row in self.pair_orders for o in row))

    def exponent(self, x, y):
        """Exponent e with w(x, y) = zeta_conductor^e."""
        xv = self.domain.exponent_of(x)
        yv = self.domain.exponent_of(y)
        L = self.conductor
        e = 0
        for i, xi in enumerate(xv):
            if not xi:
                continue
            for j, yj in enumerate(yv):
                o = self.pair_orders[i][j]
                if yj and o > 1:
                    e += xi * yj * self.exps[i][j] * (L // o)
        return e % L

    def value(self, x, y) -> CycloNumber:
        return zeta(self.conductor, self.exponent(x, y))

    def is_trivial(self):
        return all(e % o == 0 for row, orow in zip(self.exps, self.pair_orders)
                   for e, o in zip(row, orow) if o)

    def inverse(self):
        return Bicharacter(self.domain, [[-e for e in row] for row in self.exps])

    def key(self):
        return tuple(
            tuple(e % o if o else 0 for e, o in zip(row, orow))
            for row, orow in zip(self.exps, self.pair_orders)
        )

    def __eq__(self, other):
        return self.domain is other.domain and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<Bicharacter {self.key()}>"


def enumerate_bicharacters(K: AbelianDecomposition):
    """All bicharacters on K; one free root choice per generator pair."""
    r = len(K.orders)
    if r == 0:
        return [Bicharacter(K, [])]
    ranges = []
    for i in range(r):
        for j in range(r):
            ranges.append(range(math.gcd(K.orders[i], K.orders[j])))
    out = []
    for combo in product(*ranges):
        exps = [list(combo[i * r:(i + 1) * r]) for i in range(r)]
        out.append(Bicharacter(K, exps))
    return out


# ---------------------------------------------------------------------------


def lambda_set(p: int):
    """A subset of {1..p-2} of size (p-1)/2 whose pairwise products of
    distinct members are never 1 mod p: greedy scan, skipping any value whose
    inverse was already taken."""
    if p < 3 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ParameterError("p must be an odd prime")
    out = []
    taken = set()
    for x in range(1, p - 1):
        if pow(x, -1, p) in taken:
            continue
        out.append(x)
        taken.add(x)
        if len(out) == (p - 1) // 2:
            break
    return out
