"""Finite-dimensional Hopf algebras by sparse structure constants.

All structure data lives over one cyclotomic conductor.  Verification is
exact on every basis tuple; when every structure constant is a single root of
unity (true for group algebras, bismash products and their duals) the
associativity sweep runs on integer exponent tables via numpy, otherwise a
generic sparse path is used.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exactfield import CycloNumber, zeta
from .grouptool import FiniteGroup, ParameterError


class HopfAlgebra:
    """Hopf algebra on basis 0..dim-1 with sparse structure constants.

    mult[i][j] is a tuple of (k, coeff) pairs for b_i b_j; comult[i] is a
    tuple of (j, k, coeff) for Delta(b_i); unit is a sparse dict; counit a
    dense list; antipode[i] a tuple of (j, coeff) for S(b_i).
    """

    def __init__(self, dim, conductor, mult, comult, unit, counit, antipode,
                 labels=None):
        self.dim = dim
        self.conductor = conductor
        self.mult = mult
        self.comult = comult
        self.unit = {i: c for i, c in unit.items() if c}
        self.counit = list(counit)
        self.antipode = antipode
        self.labels = list(labels) if labels else [f"b{i}" for i in range(dim)]
        self._mono = -1  # lazy cache, -1 = not computed

    # -- elements

    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self, coeffs)

    def basis_element(self, i) -> "AlgebraElement":
        return AlgebraElement(self, {i: CycloNumber.one(self.conductor)})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, dict(self.unit))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def mult_entry(self, i, j):
        return self.mult[i].get(j, ())

    # -- monomial extraction for integer fast paths

    def mono_tables(self):
        """(targets, exponents) int arrays when every product of basis
        elements is a single basis element scaled by a root of unity with
        rational part 1; None otherwise."""
        if self._mono == -1:
            n, N = self.dim, self.conductor
            mt = np.full((n, n), -1, dtype=np.int32)
            me = np.zeros((n, n), dtype=np.int64)
            ok = True
            for i in range(n):
                row = self.mult[i]
                for j, terms in row.items():
                    if len(terms) != 1:
                        ok = False
                        break
                    k, c = terms[0]
                    r = c.lift(N).as_root()
                    if r is None or r[1] != 1:
                        ok = False
                        break
                    mt[i, j] = k
                    me[i, j] = r[0]
                if not ok:
                    break
            self._mono = (mt, me) if ok else None
        return self._mono

    def is_commutative(self):
        for i in range(self.dim):
            for j, terms in self.mult[i].items():
                if sorted(self.mult[j].get(i, ())) != sorted(terms):
                    return False
        return True

    def with_scaled_mult_entry(self, i, j, k, factor) -> "HopfAlgebra":
        """Copy with the coefficient of b_k in b_i b_j multiplied by factor."""
        mult = [dict(row) for row in self.mult]
        terms = list(mult[i].get(j, ()))
        for idx, (t, c) in enumerate(terms):
            if t == k:
                terms[idx] = (t, c * factor)
                break
        else:
            raise ValueError("no such structure constant")
        mult[i][j] = tuple(terms)
        return HopfAlgebra(self.dim, self.conductor, mult, self.comult,
                           self.unit, self.counit, self.antipode, self.labels)


class AlgebraElement:
    """Sparse element of a HopfAlgebra; zero coefficients are never stored."""

    __slots__ = ("host", "coeffs")

    def __init__(self, host, coeffs):
        self.host = host
        self.coeffs = {i: c for i, c in coeffs.items() if c}

    def _same_host(self, other):
        if self.host is not other.host:
            raise ValueError("elements live in different algebras")

    def __add__(self, other):
        self._same_host(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            s = out.get(i)
            s = c if s is None else s + c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return AlgebraElement(self.host, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.host, {i: -c for i, c in self.coeffs.items()})

    def scale(self, c):
        return AlgebraElement(self.host, {i: c * v for i, v in self.coeffs.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self.scale(other if isinstance(other, CycloNumber)
                              else CycloNumber.from_rational(other))
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self.__rmul__(other)
        self._same_host(other)
        mult = self.host.mult
        out = {}
        for i, ci in self.coeffs.items():
            row = mult[i]
            for j, cj in other.coeffs.items():
                terms = row.get(j)
                if not terms:
                    continue
                c = ci * cj
                for k, ck in terms:
                    s = out.get(k)
                    s = c * ck if s is None else s + c * ck
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return AlgebraElement(self.host, out)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.host is other.host and self.coeffs == other.coeffs

    def is_zero(self):
        return not self.coeffs

    def comult_apply(self):
        """Delta(x) as a sparse dict (j, k) -> coefficient."""
        out = {}
        for i, ci in self.coeffs.items():
            for j, k, c in self.host.comult[i]:
                key = (j, k)
                s = out.get(key)
                s = ci * c if s is None else s + ci * c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    def counit_apply(self) -> CycloNumber:
        eps = self.host.counit
        out = CycloNumber.zero(self.host.conductor)
        for i, c in self.coeffs.items():
            out = out + c * eps[i]
        return out

    def antipode_apply(self) -> "AlgebraElement":
        out = {}
        for i, ci in self.coeffs.items():
            for j, c in self.host.antipode[i]:
                s = out.get(j)
                s = ci * c if s is None else s + ci * c
                if s:
                    out[j] = s
                else:
                    out.pop(j, None)
        return AlgebraElement(self.host, out)

    def __repr__(self):
        labels = self.host.labels
        parts = [f"{c!r}*{labels[i]}" for i, c in sorted(self.coeffs.items())]
        return " + ".join(parts) if parts else "0"


def algebra_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def comult_apply(x: AlgebraElement):
    return x.comult_apply()


def counit_apply(x: AlgebraElement) -> CycloNumber:
    return x.counit_apply()


def antipode_apply(x: AlgebraElement) -> AlgebraElement:
    return x.antipode_apply()


# ---------------------------------------------------------------------------
# constructions


def group_algebra(G: FiniteGroup, conductor: int = 1) -> HopfAlgebra:
    """k[G]: basis the group elements, Delta(g) = g (x) g, S(g) = g^-1."""
    n = G.order
    one = CycloNumber.one(conductor)
    mult = [dict() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            mult[i][j] = ((G.mul(i, j), one),)
    comult = [((i, i, one),) for i in range(n)]
    unit = {0: one}
    counit = [one] * n
    antipode = [((G.inv(i), one),) for i in range(n)]
    return HopfAlgebra(n, conductor, mult, comult, unit, counit, antipode,
                       labels=list(G.labels))


def dual_hopf(H: HopfAlgebra) -> HopfAlgebra:
    """Transpose of all structure constants; dual index i pairs with basis i."""
    n = H.dim
    mult = [dict() for _ in range(n)]
    for k in range(n):
        for i, j, c in H.comult[k]:
            row = mult[i]
            row[j] = row.get(j, ()) + ((k, c),)
    comult = [[] for _ in range(n)]
    for i in range(n):
        for j, terms in H.mult[i].items():
            for k, c in terms:
                comult[k].append((i, j, c))
    unit = {i: c for i, c in enumerate(H.counit) if c}
    counit = [H.unit.get(i, CycloNumber.zero(H.conductor)) for i in range(n)]
    antipode = [[] for _ in range(n)]
    for i in range(n):
        for j, c in H.antipode[i]:
            antipode[j].append((i, c))
    return HopfAlgebra(n, H.conductor, mult, [tuple(t) for t in comult],
                       unit, counit, [tuple(t) for t in antipode],
                       labels=[f"{lab}^" for lab in H.labels])


# ---------------------------------------------------------------------------
# axiom verification


class AxiomReport:
    """Outcome of a verification sweep: axiom name -> list of witnesses."""

    def __init__(self):
        self.failures = {}
        self.checked = []

    def fail(self, axiom, witness):
        self.failures.setdefault(axiom, []).append(witness)

    def note(self, axiom):
        self.checked.append(axiom)

    @property
    def passed(self):
        return not self.failures

    def summary(self):
        if self.passed:
            return f"all axioms hold ({', '.join(self.checked)})"
        lines = []
        for axiom, ws in self.failures.items():
            lines.append(f"{axiom}: {len(ws)} failures, first witness {ws[0]}")
        return "; ".join(lines)

    def __repr__(self):
        return f"<AxiomReport {'PASS' if self.passed else 'FAIL'}: {self.summary()}>"


def _tensor_add(out, key, val):
    s = out.get(key)
    s = val if s is None else s + val
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def verify_hopf_axioms(H: HopfAlgebra, mode: str = "full") -> AxiomReport:
    """Exact verification of all Hopf axioms on every basis tuple.

    mode="fast" stops at the first failing witness per axiom; "full" collects
    all witnesses.
    """
    rep = AxiomReport()
    fast = mode == "fast"
    _check_assoc(H, rep, fast)
    _check_unit_laws(H, rep, fast)
    _check_coassoc(H, rep, fast)
    _check_counit_laws(H, rep, fast)
    _check_delta_algebra_map(H, rep, fast)
    _check_eps_algebra_map(H, rep, fast)
    _check_antipode(H, rep, fast)
    return rep


def _check_assoc(H, rep, fast):
    rep.note("associativity")
    n, N = H.dim, H.conductor
    tables = H.mono_tables()
    if tables is not None:
        mt, me = tables
        cols = np.arange(n)
        bad = []
        for i in range(n):
            ti = mt[i]          # (n,) target of b_i b_j
            ei = me[i]
            lhs_t = np.where(ti[:, None] >= 0, mt[ti.clip(0)][:, cols], -1)
            lhs_e = ei[:, None] + me[ti.clip(0)]
            rhs_t = np.where(mt >= 0, mt[i][mt.clip(0)], -1)
            rhs_e = me + me[i][mt.clip(0)]
            t_ok = lhs_t == rhs_t
            e_ok = (lhs_e - rhs_e) % N == 0
            good = t_ok & (e_ok | (lhs_t < 0))
            if not good.all():
                js, ks = np.nonzero(~good)
                bad.extend((i, int(j), int(k)) for j, k in zip(js, ks))
                if fast:
                    break
        for w in bad:
            rep.fail("associativity", w)
            if fast:
                return
        return
    for i in range(n):
        xi = H.basis_element(i)
        for j in range(n):
            xij = xi * H.basis_element(j)
            for k in range(n):
                lhs = xij * H.basis_element(k)
                rhs = xi * (H.basis_element(j) * H.basis_element(k))
                if lhs != rhs:
                    rep.fail("associativity", (i, j, k))
                    if fast:
                        return


def _check_unit_laws(H, rep, fast):
    rep.note("unit")
    one = H.one()
    for i in range(H.dim):
        x = H.basis_element(i)
        if one * x != x or x * one != x:
            rep.fail("unit", (i,))
            if fast:
                return


def _check_coassoc(H, rep, fast):
    rep.note("coassociativity")
    for i in range(H.dim):
        left, right = {}, {}
        for j, k, c in H.comult[i]:
            for a, b, c2 in H.comult[j]:
                _tensor_add(left, (a, b, k), c * c2)
            for a, b, c2 in H.comult[k]:
                _tensor_add(right, (j, a, b), c * c2)
        if left != right:
            rep.fail("coassociativity", (i,))
            if fast:
                return


def _check_counit_laws(H, rep, fast):
    rep.note("counit")
    eps = H.counit
    if not H.one().counit_apply().is_one():
        rep.fail("counit", ("counit(unit) != 1",))
        if fast:
            return
    for i in range(H.dim):
        left, right = {}, {}
        for j, k, c in H.comult[i]:
            _tensor_add(left, k, c * eps[j])
            _tensor_add(right, j, c * eps[k])
        expect = {i: CycloNumber.one(H.conductor)}
        if left != expect or right != expect:
            rep.fail("counit", (i,))
            if fast:
                return


def _check_delta_algebra_map(H, rep, fast):
    rep.note("comultiplication is an algebra map")
    n = H.dim
    one_elt = H.one()
    delta_one = one_elt.comult_apply()
    unit_tensor = {}
    for i, ci in H.unit.items():
        for j, cj in H.unit.items():
            _tensor_add(unit_tensor, (i, j), ci * cj)
    if delta_one != unit_tensor:
        rep.fail("comultiplication is an algebra map", ("Delta(1) != 1x1",))
        if fast:
            return
    # index Delta(b_j) by left leg for the join
    cleft = []
    for j in range(n):
        d = {}
        for u, v, c in H.comult[j]:
            d.setdefault(u, []).append((v, c))
        cleft.append(d)
    mult = H.mult
    for i in range(n):
        di = H.comult[i]
        for j in range(n):
            dj = cleft[j]
            rhs = {}
            for u1, v1, c1 in di:
                row_u = mult[u1]
                row_v = mult[v1]
                for u2 in row_u.keys() & dj.keys():
                    for v2, c2 in dj[u2]:
                        terms_v = row_v.get(v2)
                        if not terms_v:
                            continue
                        c12 = c1 * c2
                        for tu, cu in row_u[u2]:
                            for tv, cv in terms_v:
                                _tensor_add(rhs, (tu, tv), c12 * cu * cv)
            lhs = {}
            for k, ck in mult[i].get(j, ()):
                for u, v, c in H.comult[k]:
                    _tensor_add(lhs, (u, v), ck * c)
            if lhs != rhs:
                rep.fail("comultiplication is an algebra map", (i, j))
                if fast:
                    return


def _check_eps_algebra_map(H, rep, fast):
    rep.note("counit is an algebra map")
    eps = H.counit
    n = H.dim
    for i in range(n):
        for j, terms in H.mult[i].items():
            val = CycloNumber.zero(H.conductor)
            for k, c in terms:
                val = val + c * eps[k]
            if val != eps[i] * eps[j]:
                rep.fail("counit is an algebra map", (i, j))
                if fast:
                    return
        # absent rows are zero products; those require eps_i * eps_j = 0
        for j in range(n):
            if j not in H.mult[i] and eps[i] * eps[j]:
                rep.fail("counit is an algebra map", (i, j))
                if fast:
                    return


def _check_antipode(H, rep, fast):
    rep.note("antipode")
    for i in range(H.dim):
        left = H.zero()
        right = H.zero()
        for j, k, c in H.comult[i]:
            sj = H.basis_element(j).antipode_apply()
            left = left + c * (sj * H.basis_element(k))
            sk = H.basis_element(k).antipode_apply()
            right = right + c * (H.basis_element(j) * sk)
        target = H.one().scale(H.counit[i])
        if left != target or right != target:
            rep.fail("antipode", (i,))
            if fast:
                return


# ---------------------------------------------------------------------------
# antipode diagnostics


class AntipodeDiagnostics:
    def __init__(self, s2, trace_s2, s2_is_id, s4_is_id, semisimple):
        self.s2 = s2
        self.trace_s2 = trace_s2
        self.s2_is_id = s2_is_id
        self.s4_is_id = s4_is_id
        self.semisimple = semisimple

    def __repr__(self):
        return (f"<AntipodeDiagnostics trace={self.trace_s2!r} "
                f"S2=id:{self.s2_is_id} S4=id:{self.s4_is_id} "
                f"semisimple:{self.semisimple}>")


def _mat_compose(H, a, b):
    # (a o b)[i] = sum over b[i] of a rows
    out = []
    for i in range(H.dim):
        acc = {}
        for j, c in b[i]:
            for k, c2 in a[j]:
                s = acc.get(k)
                s = c * c2 if s is None else s + c * c2
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)
        out.append(tuple(acc.items()))
    return out


def antipode_diagnostics(H: HopfAlgebra) -> AntipodeDiagnostics:
    """S^2, Tr(S^2), and the standard semisimplicity flags (Tr(S^2) != 0)."""
    s = H.antipode
    s2 = _mat_compose(H, s, s)
    s4 = _mat_compose(H, s2, s2)
    trace = CycloNumber.zero(H.conductor)
    for i in range(H.dim):
        for j, c in s2[i]:
            if j == i:
                trace = trace + c
    def is_identity(mat):
        for i in range(H.dim):
            terms = [t for t in mat[i] if t[1]]
            if len(terms) != 1 or terms[0][0] != i or not terms[0][1].is_one():
                return False
        return True
    return AntipodeDiagnostics(
        s2, trace, is_identity(s2), is_identity(s4), bool(trace))


# ---------------------------------------------------------------------------
# group-like elements of bismash products


class GroupLikeSet:
    """Group-like elements together with their group structure."""

    def __init__(self, elements, table, orders, identity, host):
        self.elements = elements
        self.table = table
        self.orders = orders
        self.identity = identity
        self.host = host

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def group_likes_bismash(mp) -> GroupLikeSet:
    """All group-like elements of build_bismash(mp) for matched pairs with a
    trivial action on one side.

    Candidates are twisted characters: x = (sum_g chi(g) e_g) # f where f is
    fixed by the right action of every g and chi(g')chi(g'') =
    tau(g', g'', f) chi(g'g'').  Support analysis shows every group-like has
    this shape (the support of a group-like is all of G and its f-part is a
    single fixed point); each candidate is then verified via Delta(x) =
    x (x) x and counit(x) = 1, exactly.
    """
    from .bismash import build_bismash  # deferred; bismash imports this module

    G, F = mp.G, mp.F
    left_trivial = all(mp.act_left[g][f] == g for g in range(G.order)
                       for f in range(F.order))
    right_trivial = all(mp.act_right[g][f] == f for g in range(G.order)
                        for f in range(F.order))
    if not (left_trivial or right_trivial):
        raise ParameterError("group-like search requires one trivial action")
    H = build_bismash(mp)
    N = H.conductor

    fixed_fs = [f for f in range(F.order)
                if all(mp.act_right[g][f] == f for g in range(G.order))]

    candidates = []
    for f in fixed_fs:
        for chi in _twisted_characters(G, lambda a, b: mp.tau[a][b][f], N):
            coeffs = {H.gf_index(g, f): chi[g] for g in range(G.order)}
            candidates.append(AlgebraElement(H, coeffs))

    one = CycloNumber.one(N)
    group_likes = []
    for x in candidates:
        dx = x.comult_apply()
        xx = {}
        for i, ci in x.coeffs.items():
            for j, cj in x.coeffs.items():
                _tensor_add(xx, (i, j), ci * cj)
        if dx == xx and x.counit_apply() == one:
            group_likes.append(x)

    unit = AlgebraElement(H, dict(H.unit))
    ident = next(i for i, x in enumerate(group_likes) if x == unit)
    table = []
    for x in group_likes:
        row = []
        for y in group_likes:
            z = x * y
            idx = next((k for k, g in enumerate(group_likes) if g == z), None)
            if idx is None:
                raise RuntimeError("group-likes not closed under product")
            row.append(idx)
        table.append(row)
    orders = []
    for i in range(len(group_likes)):
        cur, k = i, 1
        while cur != ident:
            cur = table[cur][i]
            k += 1
        orders.append(k)
    return GroupLikeSet(group_likes, table, orders, ident, H)


def _twisted_characters(G: FiniteGroup, tau, conductor):
    """All chi: G -> roots of unity with chi(a)chi(b) = tau(a,b) chi(ab),
    for abelian G and tau with values roots of unity.

    Per independent generator g of order n the cyclic extension chain forces
    chi(g)^n = prod_k tau(g^k, g); the finitely many root solutions are
    combined and every combination is checked on all pairs.
    """
    from .grouptool import abelian_decomposition

    if not G.is_abelian():
        raise ParameterError("twisted characters implemented for abelian groups")
    dec = abelian_decomposition(G, range(G.order))
    one = CycloNumber.one(conductor)
    if not dec.gens:
        return [{0: one}]

    per_gen = []
    for g, n in zip(dec.gens, dec.orders):
        forced = one
        x = g
        for _ in range(n - 1):
            forced = forced * tau(x, g)
            x = G.mul(x, g)
        L = n * conductor
        vals = [v for v in (zeta(L, e) for e in range(L)) if v**n == forced]
        per_gen.append(vals)

    out = []
    from itertools import product as iproduct
    for combo in iproduct(*per_gen):
        # extend along the lexicographic exponent chain
        chi = {0: one}
        for gi, (g, n, val) in enumerate(zip(dec.gens, dec.orders, combo)):
            prev_layer = dict(chi)
            layer = prev_layer
            for _ in range(1, n):
                nxt = {}
                for x, cx in layer.items():
                    xg = G.mul(x, g)
                    nxt[xg] = cx * val / tau(x, g)
                chi.update(nxt)
                layer = nxt
        if len(chi) != G.order:
            continue
        if all(chi[a] * chi[b] == tau(a, b) * chi[G.mul(a, b)]
               for a in range(G.order) for b in range(G.order)):
            out.append(chi)
    return out


# ---------------------------------------------------------------------------
# structure-constant dump: bit-exact text round-trip


class FormatError(ValueError):
    """Raised on malformed structure dumps."""


def _serial_coeff(c: CycloNumber, conductor):
    den, nums = c.lift(conductor).serial()
    return f"{den} " + " ".join(str(x) for x in nums)


def dump_structure(H: HopfAlgebra) -> str:
    """Text dump of all structure constants; loads back bit-exactly."""
    N = H.conductor
    out = [f"hopfqt-structure 1", f"dim {H.dim}", f"conductor {N}"]
    for i, lab in enumerate(H.labels):
        out.append(f"label {i} {lab}")
    for i, c in sorted(H.unit.items()):
        out.append(f"UNIT {i} {_serial_coeff(c, N)}")
    for i, c in enumerate(H.counit):
        if c:
            out.append(f"EPS {i} {_serial_coeff(c, N)}")
    for i in range(H.dim):
        for j in sorted(H.mult[i]):
            for k, c in sorted(H.mult[i][j], key=lambda t: t[0]):
                out.append(f"MUL {i} {j} {k} {_serial_coeff(c, N)}")
    for i in range(H.dim):
        for j, k, c in sorted(H.comult[i], key=lambda t: (t[0], t[1])):
            out.append(f"CMUL {i} {j} {k} {_serial_coeff(c, N)}")
    for i in range(H.dim):
        for j, c in sorted(H.antipode[i], key=lambda t: t[0]):
            out.append(f"S {i} {j} {_serial_coeff(c, N)}")
    out.append("END")
    return "\n".join(out) + "\n"


def _parse_coeff(fields, conductor, phi):
    if len(fields) != phi + 1:
        raise FormatError("bad coefficient field count")
    den = int(fields[0])
    nums = [int(x) for x in fields[1:]]
    return CycloNumber.from_coeffs(conductor, [Fraction(x, den) for x in nums])


def load_structure(text: str) -> HopfAlgebra:
    from .exactfield import euler_phi

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    try:
        if not lines or lines[0].split() != ["hopfqt-structure", "1"]:
            raise FormatError("missing header")
        if not lines[1].startswith("dim ") or not lines[2].startswith("conductor "):
            raise FormatError("missing dim/conductor")
        dim = int(lines[1].split()[1])
        conductor = int(lines[2].split()[1])
        phi = euler_phi(conductor)
        labels = [f"b{i}" for i in range(dim)]
        zero = CycloNumber.zero(conductor)
        mult = [dict() for _ in range(dim)]
        comult = [[] for _ in range(dim)]
        unit = {}
        counit = [zero] * dim
        antipode = [[] for _ in range(dim)]
        if lines[-1] != "END":
            raise FormatError("missing END")
        for ln in lines[3:-1]:
            parts = ln.split()
            tag = parts[0]
            if tag == "label":
                labels[int(parts[1])] = parts[2]
            elif tag == "UNIT":
                unit[int(parts[1])] = _parse_coeff(parts[2:], conductor, phi)
            elif tag == "EPS":
                counit[int(parts[1])] = _parse_coeff(parts[2:], conductor, phi)
            elif tag == "MUL":
                i, j, k = int(parts[1]), int(parts[2]), int(parts[3])
                c = _parse_coeff(parts[4:], conductor, phi)
                mult[i][j] = mult[i].get(j, ()) + ((k, c),)
            elif tag == "CMUL":
                i, j, k = int(parts[1]), int(parts[2]), int(parts[3])
                comult[i].append((j, k, _parse_coeff(parts[4:], conductor, phi)))
            elif tag == "S":
                i, j = int(parts[1]), int(parts[2])
                antipode[i].append((j, _parse_coeff(parts[3:], conductor, phi)))
            else:
                raise FormatError(f"unknown tag {tag!r}")
    except (IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed structure dump: {exc}") from exc
    return HopfAlgebra(dim, conductor, mult, [tuple(t) for t in comult],
                       unit, counit, [tuple(t) for t in antipode], labels)


def hopf_structures_equal(a: HopfAlgebra, b: HopfAlgebra) -> bool:
    if a.dim != b.dim:
        return False
    for i in range(a.dim):
        ra = {(j, k): c for j, t in a.mult[i].items() for k, c in t}
        rb = {(j, k): c for j, t in b.mult[i].items() for k, c in t}
        if ra.keys() != rb.keys() or any(ra[k] != rb[k] for k in ra):
            return False
        ca = {(u, v): c for u, v, c in a.comult[i]}
        cb = {(u, v): c for u, v, c in b.comult[i]}
        if ca.keys() != cb.keys() or any(ca[k] != cb[k] for k in ca):
            return False
        sa, sb = dict(a.antipode[i]), dict(b.antipode[i])
        if sa.keys() != sb.keys() or any(sa[k] != sb[k] for k in sa):
            return False
    if a.unit.keys() != b.unit.keys() or any(a.unit[i] != b.unit[i] for i in a.unit):
        return False
    return all(x == y for x, y in zip(a.counit, b.counit))
