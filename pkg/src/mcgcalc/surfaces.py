"""Surface configurations: named curve systems with their declared combinatorics.

A configuration records exactly the combinatorial facts a construction
needs: which curves exist, which pairs are disjoint, homology classes with
the (possibly degenerate) intersection pairing, relation instances that hold
among the twists, formal mapping-class symbols with their declared curve
actions, and, for the small verification surfaces, exact automorphism tables
on the free fundamental group.

Curve systems here are data, not geometry: nothing is computed from curve
pictures, and every shipped fact is cross-checked by ``validate_config``
plus the homology backend.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .words import (
    BaseCurve,
    Letter,
    Twist,
    Word,
    free_reduce,
    twist,
    word,
)

FWord = tuple[tuple[str, int], ...]  # reduced word in a free group, (gen, exp)


def fw_reduce(pairs) -> FWord:
    stack: list[list] = []
    for gen, exp in pairs:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


def fw_invert(w: FWord) -> FWord:
    return tuple((g, -e) for g, e in reversed(w))


def fw_mul(*ws: FWord) -> FWord:
    out: list = []
    for w in ws:
        out.extend(w)
    return fw_reduce(out)


@dataclass(frozen=True)
class Equation:
    lhs: Word
    rhs: Word


@dataclass(frozen=True)
class CurveRecord:
    name: str
    homology: tuple[int, ...]
    separating: bool = False
    boundary_parallel: bool = False


@dataclass(frozen=True)
class FormalRecord:
    """A formal mapping-class symbol with its declared data.

    ``curve_map`` lists curve pairs c -> f(c).  ``h1_matrix`` is the declared
    homology action (columns indexed like homology vectors); it must preserve
    the pairing, fix boundary classes and send [c] to +-[f(c)].
    """

    name: str
    curve_map: tuple[tuple[str, str], ...]
    h1_matrix: Optional[tuple[tuple[int, ...], ...]] = None
    support: Optional[str] = None

    def image_of(self, name: str) -> Optional[str]:
        for src, dst in self.curve_map:
            if src == name:
                return dst
        return None

    def preimage_of(self, name: str) -> Optional[str]:
        for src, dst in self.curve_map:
            if dst == name:
                return src
        return None


@dataclass(frozen=True)
class Relation:
    """A named relation instance t-word = t-word holding on the surface."""

    name: str
    lhs: Word
    rhs: Word
    provenance: str = ""


@dataclass(frozen=True)
class AutTable:
    """Automorphism of the free fundamental group with its declared inverse."""

    images: tuple[tuple[str, FWord], ...]
    inverse_images: tuple[tuple[str, FWord], ...]

    def image_dict(self) -> dict[str, FWord]:
        return dict(self.images)

    def inverse_dict(self) -> dict[str, FWord]:
        return dict(self.inverse_images)


@dataclass(frozen=True)
class Pi1Data:
    generators: tuple[str, ...]
    boundary_word: FWord
    curve_words: tuple[tuple[str, FWord], ...]
    tables: tuple[tuple[str, AutTable], ...]  # keyed by curve or formal name

    def table_dict(self) -> dict[str, AutTable]:
        return dict(self.tables)

    def curve_word_dict(self) -> dict[str, FWord]:
        return dict(self.curve_words)


@dataclass(frozen=True)
class SurfaceConfig:
    name: str
    genus: int
    boundary_count: int
    curves: dict[str, CurveRecord]
    boundary_names: tuple[str, ...]
    disjoint_pairs: frozenset[frozenset[str]]
    pairing: tuple[tuple[int, ...], ...]
    aliases: dict[str, str] = field(default_factory=dict)
    formals: dict[str, FormalRecord] = field(default_factory=dict)
    relations: dict[str, Relation] = field(default_factory=dict)
    supports: dict[str, str] = field(default_factory=dict)
    support_pairs: frozenset[frozenset[str]] = frozenset()
    pi1: Optional[Pi1Data] = None

    @property
    def rank(self) -> int:
        return 2 * self.genus + self.boundary_count - 1

    def resolve(self, name: str) -> str:
        seen = set()
        while name in self.aliases:
            if name in seen:
                raise ValueError(f"alias cycle at {name!r}")
            seen.add(name)
            name = self.aliases[name]
        return name

    def curve_record(self, name: str) -> CurveRecord:
        key = self.resolve(name)
        if key not in self.curves:
            raise KeyError(f"unknown curve {name!r} in config {self.name!r}")
        return self.curves[key]

    def has_curve(self, name: str) -> bool:
        try:
            self.curve_record(name)
            return True
        except KeyError:
            return False

    def declared_disjoint(self, n1: str, n2: str) -> bool:
        a, b = self.resolve(n1), self.resolve(n2)
        if a == b:
            return False
        return frozenset((a, b)) in self.disjoint_pairs

    def commutes(self, key1: tuple[str, str], key2: tuple[str, str]) -> bool:
        """Whether two generators (("t"|"f"), name) commute by declared data."""
        k1 = (key1[0], self.resolve(key1[1]) if key1[0] == "t" else key1[1])
        k2 = (key2[0], self.resolve(key2[1]) if key2[0] == "t" else key2[1])
        if k1 == k2:
            return True
        if k1[0] == "t" and k2[0] == "t" and self.declared_disjoint(k1[1], k2[1]):
            return True
        s1 = self.supports.get(k1[1])
        s2 = self.supports.get(k2[1])
        if s1 and s2 and s1 != s2 and frozenset((s1, s2)) in self.support_pairs:
            return True
        return False

    def twist_word(self, name: str, exponent: int = 1) -> Word:
        return twist(self.resolve(name), exponent)


# --------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    problems: list[str]

    @property
    def ok(self) -> bool:
        return not self.problems


def validate_config(cfg: SurfaceConfig) -> ValidationReport:
    """Check the structural invariants of a configuration.

    Beyond bookkeeping (name resolution, vector lengths, pairing
    antisymmetry) this verifies that every declared relation instance acts
    identically on homology, that declared formal actions are pairing
    preserving and compatible with their curve maps, and that automorphism
    tables are genuine boundary-fixing automorphisms whose abelianization is
    the transvection of the curve's class.
    """
    from . import repcheck

    problems: list[str] = []
    rank = cfg.rank

    for name in cfg.boundary_names:
        if not cfg.has_curve(name):
            problems.append(f"boundary name {name!r} has no curve record")

    for name, rec in cfg.curves.items():
        if len(rec.homology) != rank:
            problems.append(f"curve {name!r}: homology length {len(rec.homology)} != {rank}")
        if rec.boundary_parallel and cfg.boundary_count == 1 and any(rec.homology):
            problems.append(f"curve {name!r}: boundary-parallel on one-boundary surface must be null-homologous")

    for pair in cfg.disjoint_pairs:
        names = sorted(pair)
        if len(names) != 2:
            problems.append(f"disjoint pair {names} is not a proper pair")
            continue
        for n in names:
            if not cfg.has_curve(n):
                problems.append(f"disjoint pair names unknown curve {n!r}")

    if len(cfg.pairing) != rank or any(len(row) != rank for row in cfg.pairing):
        problems.append("pairing matrix has wrong shape")
    else:
        for i in range(rank):
            for j in range(rank):
                if cfg.pairing[i][j] != -cfg.pairing[j][i]:
                    problems.append("pairing matrix is not antisymmetric")
                    break
            else:
                continue
            break

    for fname, rec in cfg.formals.items():
        for src, dst in rec.curve_map:
            if not cfg.has_curve(src) or not cfg.has_curve(dst):
                problems.append(f"formal {fname!r}: curve map names unknown curve")
        if rec.h1_matrix is not None:
            m = rec.h1_matrix
            if len(m) != rank or any(len(row) != rank for row in m):
                problems.append(f"formal {fname!r}: homology matrix has wrong shape")
                continue
            if not repcheck.preserves_pairing(m, cfg.pairing):
                problems.append(f"formal {fname!r}: homology action does not preserve the pairing")
            for bname in cfg.boundary_names:
                if cfg.has_curve(bname):
                    v = cfg.curve_record(bname).homology
                    if repcheck.mat_vec(m, v) != tuple(v):
                        problems.append(f"formal {fname!r}: homology action moves boundary class {bname!r}")
            for src, dst in rec.curve_map:
                if cfg.has_curve(src) and cfg.has_curve(dst):
                    img = repcheck.mat_vec(m, cfg.curve_record(src).homology)
                    target = cfg.curve_record(dst).homology
                    if img != tuple(target) and img != tuple(-x for x in target):
                        problems.append(
                            f"formal {fname!r}: homology image of {src!r} is not +-[{dst}]"
                        )

    for rname, rel in cfg.relations.items():
        try:
            lhs = repcheck.h1_action(rel.lhs, cfg)
            rhs = repcheck.h1_action(rel.rhs, cfg)
        except Exception as exc:  # missing curve data and the like
            problems.append(f"relation {rname!r}: homology action failed ({exc})")
            continue
        if lhs.matrix != rhs.matrix:
            problems.append(f"relation {rname!r}: sides differ on homology")

    if cfg.pi1 is not None:
        problems.extend(_validate_pi1(cfg))

    return ValidationReport(problems)


def _validate_pi1(cfg: SurfaceConfig) -> list[str]:
    from . import repcheck

    problems: list[str] = []
    pi1 = cfg.pi1
    assert pi1 is not None
    gens = pi1.generators
    if len(gens) != cfg.rank:
        problems.append(f"pi1 rank {len(gens)} != {cfg.rank}")
        return problems

    tables = pi1.table_dict()
    for name, table in tables.items():
        images = table.image_dict()
        inverses = table.inverse_dict()
        if set(images) != set(gens) or set(inverses) != set(gens):
            problems.append(f"pi1 table {name!r}: images missing generators")
            continue
        for g in gens:
            roundtrip = repcheck.fw_apply(images, repcheck.fw_apply(inverses, ((g, 1),)))
            if roundtrip != ((g, 1),):
                problems.append(f"pi1 table {name!r}: declared inverse fails on {g!r}")
                break
        fixed = repcheck.fw_apply(images, pi1.boundary_word)
        if fixed != pi1.boundary_word:
            problems.append(f"pi1 table {name!r}: boundary word not fixed")
        # abelianized action must be the transvection of the curve class
        if cfg.has_curve(name):
            v = cfg.curve_record(name).homology
            for j, g in enumerate(gens):
                got = repcheck.abelianize(images[g], gens)
                expected = list(repcheck.unit_vector(cfg.rank, j))
                coeff = repcheck.pair(cfg.pairing, expected, v)
                expected = tuple(expected[i] + coeff * v[i] for i in range(cfg.rank))
                if got != expected:
                    problems.append(f"pi1 table {name!r}: abelianization is not the transvection")
                    break

    words = pi1.curve_word_dict()
    for cname, fword in words.items():
        if cfg.has_curve(cname):
            got = repcheck.abelianize(fword, gens)
            if got != tuple(cfg.curve_record(cname).homology):
                problems.append(f"pi1 word for {cname!r} does not abelianize to its class")
    return problems


# --------------------------------------------------------------------------
# relation templates


def instantiate_lantern(
    cfg: SurfaceConfig,
    holes: tuple[str, str, str, str],
    interiors: tuple[str, str, str],
    boundary: str,
) -> Equation:
    """Lantern relation on a four-holed sphere bounded by ``holes``.

    ``boundary`` names the hole playing the outer-boundary role; the left
    side is its twist followed by the other three hole twists, the right
    side the three interior twists, all positive.
    """
    for name in (*holes, *interiors):
        if not cfg.has_curve(name):
            raise KeyError(f"unknown curve {name!r}")
    if boundary not in holes:
        raise ValueError("boundary must be one of the four holes")
    rest = [h for h in holes if h != boundary]
    if len(rest) != 3:
        raise ValueError("the four holes must be distinct")
    for i, h1 in enumerate(holes):
        for h2 in holes[i + 1 :]:
            if not cfg.declared_disjoint(h1, h2):
                raise ValueError(f"holes {h1!r}, {h2!r} are not declared disjoint")
    lhs = free_reduce(
        [Letter(Twist(BaseCurve(cfg.resolve(boundary))), 1)]
        + [Letter(Twist(BaseCurve(cfg.resolve(h))), 1) for h in rest]
    )
    rhs = free_reduce([Letter(Twist(BaseCurve(cfg.resolve(x))), 1) for x in interiors])
    return Equation(lhs, rhs)


def instantiate_chain(
    cfg: SurfaceConfig,
    chain: tuple[str, ...],
    boundaries: tuple[str, str],
) -> Equation:
    """Chain relation (t_c1 ... t_c(2l+1))^(2l+2) = t_d1 t_d2.

    The chain must have odd length; consecutive curves must not be declared
    disjoint while curves two or more apart must be.
    """
    if len(chain) % 2 == 0 or len(chain) < 1:
        raise ValueError("chain must have odd length 2l+1")
    for name in (*chain, *boundaries):
        if not cfg.has_curve(name):
            raise KeyError(f"unknown curve {name!r}")
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            disjoint = cfg.declared_disjoint(chain[i], chain[j])
            if j == i + 1 and disjoint:
                raise ValueError(f"consecutive chain curves {chain[i]!r}, {chain[j]!r} declared disjoint")
            if j > i + 1 and not disjoint:
                raise ValueError(f"chain curves {chain[i]!r}, {chain[j]!r} must be declared disjoint")
    once = [Letter(Twist(BaseCurve(cfg.resolve(c))), 1) for c in chain]
    power = len(chain) + 1
    lhs = free_reduce(once * power)
    rhs = free_reduce([Letter(Twist(BaseCurve(cfg.resolve(d))), 1) for d in boundaries])
    return Equation(lhs, rhs)


def instantiate_genus1(cfg: SurfaceConfig) -> Equation:
    """The torus-with-boundary relation t_delta = (t_a t_b)^6."""
    if cfg.genus != 1 or cfg.boundary_count != 1:
        raise ValueError("config is not a one-holed torus")
    for name in ("a", "b", "delta"):
        if not cfg.has_curve(name):
            raise KeyError(f"unknown curve {name!r}")
    if cfg.declared_disjoint("a", "b"):
        raise ValueError("curves a, b must intersect")
    lhs = twist("delta")
    rhs = (twist("a") * twist("b")) ** 6
    return Equation(lhs, rhs)


# --------------------------------------------------------------------------
# matrix helpers for builders


def zero_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(0 for _ in range(n)) for _ in range(n))


def identity_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def standard_pairing(rank: int, genus: int, sign: int = 1) -> tuple[tuple[int, ...], ...]:
    """Block pairing with <e_i, f_i> = sign on the first 2*genus coordinates.

    Remaining coordinates (boundary classes) lie in the radical.
    """
    m = [[0] * rank for _ in range(rank)]
    for i in range(genus):
        m[2 * i][2 * i + 1] = sign
        m[2 * i + 1][2 * i] = -sign
    return tuple(tuple(row) for row in m)


def _vec(rank: int, entries: dict[int, int]) -> tuple[int, ...]:
    v = [0] * rank
    for idx, val in entries.items():
        v[idx] = val
    return tuple(v)


def _vadd(*vs: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(parts) for parts in zip(*vs))


def _vneg(v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in v)


def _all_pairs(names) -> set[frozenset[str]]:
    names = list(names)
    return {frozenset((a, b)) for i, a in enumerate(names) for b in names[i + 1 :]}


# --------------------------------------------------------------------------
# shipped configurations


@lru_cache(maxsize=None)
def torus_config() -> SurfaceConfig:
    """One-holed torus with curves a, b meeting once and boundary delta.

    Carries the exact automorphism backend: pi1 is free on alpha, beta; the
    boundary twist acts by conjugation with the boundary word.
    """
    a = ("alpha", 1)
    b = ("beta", 1)
    delta_word: FWord = (("beta", 1), ("alpha", 1), ("beta", -1), ("alpha", -1))

    def conj(w: FWord) -> FWord:
        return fw_mul(delta_word, w, fw_invert(delta_word))

    def conj_inv(w: FWord) -> FWord:
        return fw_mul(fw_invert(delta_word), w, delta_word)

    tables = (
        (
            "a",
            AutTable(
                images=(("alpha", (a,)), ("beta", (b, a))),
                inverse_images=(("alpha", (a,)), ("beta", (b, ("alpha", -1)))),
            ),
        ),
        (
            "b",
            AutTable(
                images=(("alpha", (a, ("beta", -1))), ("beta", (b,))),
                inverse_images=(("alpha", (a, b)), ("beta", (b,))),
            ),
        ),
        (
            "delta",
            AutTable(
                images=(("alpha", conj((a,))), ("beta", conj((b,)))),
                inverse_images=(("alpha", conj_inv((a,))), ("beta", conj_inv((b,)))),
            ),
        ),
    )
    pi1 = Pi1Data(
        generators=("alpha", "beta"),
        boundary_word=delta_word,
        curve_words=(("a", (a,)), ("b", (b,)), ("delta", delta_word)),
        tables=tables,
    )
    curves = {
        "a": CurveRecord("a", (1, 0)),
        "b": CurveRecord("b", (0, 1)),
        "delta": CurveRecord("delta", (0, 0), boundary_parallel=True),
    }
    relations = {
        "genus1": Relation(
            "genus1",
            twist("delta"),
            (twist("a") * twist("b")) ** 6,
            provenance="boundary twist of the one-holed torus as the sixth power of t_a t_b",
        ),
    }
    return SurfaceConfig(
        name="torus",
        genus=1,
        boundary_count=1,
        curves=curves,
        boundary_names=("delta",),
        disjoint_pairs=frozenset({frozenset(("delta", "a")), frozenset(("delta", "b"))}),
        pairing=((0, -1), (1, 0)),
        relations=relations,
        pi1=pi1,
    )


def _disk_ucurve(j: int) -> str:
    return "y1" if j == 2 else f"u{j}"


def _disk_vcurve(j: int) -> str:
    return "y2" if j == 2 else f"v{j}"


@lru_cache(maxsize=None)
def disk_config(n: int) -> SurfaceConfig:
    """Disk with n holes a1..an, boundary delta, and its lantern curve system.

    x_i encircles every hole but the i-th.  The nested curves u_j (around
    holes 1..j) and v_j (around holes j+1..n) support the telescoping
    lantern decomposition; for j = 2 they carry the names y1, y2.
    All twists act trivially on the (pairing-free) homology of the disk.
    """
    if n < 3:
        raise ValueError("need at least three holes")
    rank = n
    total = tuple(1 for _ in range(n))

    curves: dict[str, CurveRecord] = {
        "delta": CurveRecord("delta", total, separating=True, boundary_parallel=True)
    }
    for i in range(1, n + 1):
        curves[f"a{i}"] = CurveRecord(
            f"a{i}", _vec(rank, {i - 1: 1}), separating=True, boundary_parallel=True
        )
        xvec = tuple(0 if k == i - 1 else 1 for k in range(rank))
        curves[f"x{i}"] = CurveRecord(f"x{i}", xvec, separating=True)
    for j in range(2, n - 1):
        uvec = tuple(1 if k < j else 0 for k in range(rank))
        vvec = tuple(1 if k >= j else 0 for k in range(rank))
        curves[_disk_ucurve(j)] = CurveRecord(_disk_ucurve(j), uvec, separating=True)
        curves[_disk_vcurve(j)] = CurveRecord(_disk_vcurve(j), vvec, separating=True)

    holes = [f"a{i}" for i in range(1, n + 1)]
    us = [_disk_ucurve(j) for j in range(2, n - 1)]
    vs = [_disk_vcurve(j) for j in range(2, n - 1)]
    xs = [f"x{i}" for i in range(1, n + 1)]

    pairs: set[frozenset[str]] = set()
    pairs |= {frozenset(("delta", c)) for c in curves if c != "delta"}
    pairs |= _all_pairs(holes)
    pairs |= {frozenset((x, a)) for x in xs for a in holes}
    pairs |= {frozenset((u, a)) for u in us + vs for a in holes}
    pairs |= _all_pairs(us)
    pairs |= _all_pairs(vs)
    for j in range(2, n - 1):
        for k in range(j, n - 1):
            pairs.add(frozenset((_disk_ucurve(j), _disk_vcurve(k))))
    for i in range(1, n + 1):
        for j in range(2, n - 1):
            if i > j:
                pairs.add(frozenset((f"x{i}", _disk_ucurve(j))))
            if i <= j:
                pairs.add(frozenset((f"x{i}", _disk_vcurve(j))))

    relations = dict(_telescope_relations(n, hole=lambda i: f"a{i}"))

    return SurfaceConfig(
        name=f"disk{n}",
        genus=0,
        boundary_count=n + 1,
        curves=curves,
        boundary_names=("delta", *holes),
        disjoint_pairs=frozenset(pairs),
        pairing=zero_matrix(rank),
        relations=relations,
    )


def _telescope_relations(n: int, hole) -> list[tuple[str, Relation]]:
    """Lantern instances L(3)..L(n) of the nested decomposition of an n-holed disk.

    With u_1 = a_1, v_(n-1) = a_n, v_1 = x_1 and u_(n-1) = x_n:

        L(3):      delta a1 a2 v2          = u2 x1 x2
        L(k), k>3: delta u(k-2) a(k-1) v(k-1) = x(k-1) u(k-1) v(k-2)
    """

    def ucur(j: int) -> str:
        if j == 1:
            return hole(1)
        if j == n - 1:
            return f"x{n}"
        return _disk_ucurve(j)

    def vcur(j: int) -> str:
        if j == n - 1:
            return hole(n)
        if j == 1:
            return "x1"
        return _disk_vcurve(j)

    out: list[tuple[str, Relation]] = []
    if n == 3:
        lhs = twist("delta") * twist(hole(1)) * twist(hole(2)) * twist(hole(3))
        rhs = twist("x1") * twist("x2") * twist("x3")
        out.append(
            (
                "lantern3",
                Relation("lantern3", lhs, rhs, provenance="lantern on the three-holed disk"),
            )
        )
        return out

    lhs = twist("delta") * twist(hole(1)) * twist(hole(2)) * twist(vcur(2))
    rhs = twist(ucur(2)) * twist("x1") * twist("x2")
    out.append(
        (
            "lantern3",
            Relation(
                "lantern3", lhs, rhs,
                provenance="lantern on holes delta,a1,a2 and the curve around the remaining holes",
            ),
        )
    )
    for k in range(4, n + 1):
        lhs = twist("delta") * twist(ucur(k - 2)) * twist(hole(k - 1)) * twist(vcur(k - 1))
        rhs = twist(f"x{k - 1}") * twist(ucur(k - 1)) * twist(vcur(k - 2))
        out.append(
            (
                f"lantern{k}",
                Relation(
                    f"lantern{k}", lhs, rhs,
                    provenance="lantern splitting off the next hole of the nested decomposition",
                ),
            )
        )
    return out


@lru_cache(maxsize=None)
def chain_config(l: int) -> SurfaceConfig:
    """Genus-l surface with two boundary components filled by a (2l+1)-chain."""
    if l < 1:
        raise ValueError("need l >= 1")
    g = l
    rank = 2 * g + 1  # e1,f1,..,eg,fg, plus one boundary class B
    bidx = 2 * g

    def e(i: int) -> tuple[int, ...]:
        return _vec(rank, {2 * (i - 1): 1})

    def f(i: int) -> tuple[int, ...]:
        return _vec(rank, {2 * (i - 1) + 1: 1})

    B = _vec(rank, {bidx: 1})

    curves: dict[str, CurveRecord] = {}
    for i in range(1, 2 * l + 2):
        if i % 2 == 1:
            vec = f((i + 1) // 2)
            if i == 2 * l + 1:
                vec = _vadd(f(l), B)
        else:
            k = i // 2
            vec = _vadd(e(k), _vneg(e(k + 1))) if k < g else e(g)
        curves[f"c{i}"] = CurveRecord(f"c{i}", vec)
    # chain classes: odd positions are meridians f_k (the last one shifted by
    # the boundary class), even position 2k links handles k and k+1
    curves["d1"] = CurveRecord("d1", B, separating=False, boundary_parallel=True)
    curves["d2"] = CurveRecord("d2", _vneg(B), separating=False, boundary_parallel=True)

    pairs: set[frozenset[str]] = set()
    chain_names = [f"c{i}" for i in range(1, 2 * l + 2)]
    for i in range(1, 2 * l + 2):
        for j in range(i + 2, 2 * l + 2):
            pairs.add(frozenset((f"c{i}", f"c{j}")))
    for d in ("d1", "d2"):
        for c in chain_names:
            pairs.add(frozenset((d, c)))
    pairs.add(frozenset(("d1", "d2")))

    relations = {
        "chain": Relation(
            "chain",
            instantiate_chain_words(chain_names, 2 * l + 2),
            twist("d1") * twist("d2"),
            provenance=f"chain of length {2 * l + 1} filling the surface",
        )
    }
    return SurfaceConfig(
        name=f"chain{l}",
        genus=g,
        boundary_count=2,
        curves=curves,
        boundary_names=("d1", "d2"),
        disjoint_pairs=frozenset(pairs),
        pairing=standard_pairing(rank, g),
        relations=relations,
    )


def instantiate_chain_words(chain_names, power: int) -> Word:
    once = [Letter(Twist(BaseCurve(c)), 1) for c in chain_names]
    return free_reduce(once * power)


def _chain_word(names) -> Word:
    return free_reduce([Letter(Twist(BaseCurve(c)), 1) for c in names])


def _braid_collar_word(chain_names) -> Word:
    """Positive word theta_(N) theta_(N+1) over an N+1-letter chain.

    theta_k = x_(k-1) .. x_1 x_1 .. x_(k-1); appended to the full twist of the
    chain minus its last two letters it gives the full twist of the chain.
    """
    xs = list(chain_names)
    N = len(xs)

    def theta(k: int) -> list[str]:
        left = [xs[i] for i in range(k - 2, -1, -1)]
        return left + left[::-1]

    return _chain_word(theta(N - 1) + theta(N))


@lru_cache(maxsize=None)
def surface_config(g: int) -> SurfaceConfig:
    """Genus-g surface with one boundary component and its working curve system.

    The system contains an embedded four-holed disk whose first and fourth
    holes are the same curve a1, the interior curves x1..x4, y1, y2 of its two
    lantern spheres, and a twist chain c1, .., c(2g-2), b, r running through
    the genus.  Stated subsurface facts: the chain a1, r, b fills a genus-1
    piece with boundary x2, a3; the chain c1..c(2g-2), b fills genus g-1 with
    boundary x1, a1; dropping the last two chain curves gives boundary a2, a3;
    the shorter chains c1..c(2l-1) have boundary pairs d1_l, d2_l.
    """
    if g < 2:
        raise ValueError("need genus >= 2")
    rank = 2 * g

    def e(i: int) -> tuple[int, ...]:
        return _vec(rank, {2 * (i - 1): 1})

    def f(i: int) -> tuple[int, ...]:
        return _vec(rank, {2 * (i - 1) + 1: 1})

    def w(l: int) -> tuple[int, ...]:
        return _vec(rank, {2 * (k - 1) + 1: 1 for k in range(1, l + 1)})

    curves: dict[str, CurveRecord] = {
        "delta": CurveRecord("delta", tuple([0] * rank), separating=True, boundary_parallel=True),
        "a1": CurveRecord("a1", w(g)),
        "a2": CurveRecord("a2", w(g - 1)),
        "a3": CurveRecord("a3", _vneg(w(g - 1))),
        "x1": CurveRecord("x1", _vneg(w(g))),
        "x2": CurveRecord("x2", _vneg(w(g - 1))),
        "x3": CurveRecord("x3", w(g - 1)),
        "x4": CurveRecord("x4", w(g)),
        "y1": CurveRecord("y1", _vadd(w(g), w(g - 1))),
        "y2": CurveRecord("y2", _vneg(_vadd(w(g), w(g - 1)))),
        "b": CurveRecord("b", f(g)),
        "r": CurveRecord("r", e(g)),
    }
    for i in range(1, 2 * g - 1):
        vec = f((i + 1) // 2) if i % 2 == 1 else _vadd(e(i // 2), _vneg(e(i // 2 + 1)))
        curves[f"c{i}"] = CurveRecord(f"c{i}", vec)
    for l in range(2, g - 1):
        curves[f"d1_{l}"] = CurveRecord(f"d1_{l}", w(l))
        curves[f"d2_{l}"] = CurveRecord(f"d2_{l}", _vneg(w(l)))

    aliases = {
        "a4": "a1",
        f"c{2 * g - 1}": "b",
        f"c{2 * g}": "r",
    }
    if g >= 2:
        aliases[f"d1_{g - 1}"] = "a2"
        aliases[f"d2_{g - 1}"] = "a3"
        aliases[f"d1_{g}"] = "x1"
        aliases[f"d2_{g}"] = "a1"

    lantern_block = ["a1", "a2", "a3", "x1", "x2", "x3", "x4", "y1", "y2"]
    chain_names = [f"c{i}" for i in range(1, 2 * g - 1)] + ["b", "r"]

    pairs: set[frozenset[str]] = set()
    pairs |= {frozenset(("delta", c)) for c in curves if c != "delta"}
    pairs |= _all_pairs(["a1", "a2", "a3"])
    for x in ("x1", "x2", "x3", "x4"):
        for a in ("a1", "a2", "a3"):
            pairs.add(frozenset((x, a)))
    for y in ("y1", "y2"):
        for a in ("a1", "a2", "a3"):
            pairs.add(frozenset((y, a)))
    pairs.add(frozenset(("y1", "y2")))
    pairs.add(frozenset(("y1", "x3")))
    pairs.add(frozenset(("y1", "x4")))
    pairs.add(frozenset(("y2", "x1")))
    pairs.add(frozenset(("y2", "x2")))
    # chain adjacency: curves two or more apart are disjoint
    for i in range(len(chain_names)):
        for j in range(i + 2, len(chain_names)):
            pairs.add(frozenset((chain_names[i], chain_names[j])))
    # subsurface boundaries are disjoint from the chains they bound
    for c in chain_names[: 2 * g - 1]:  # c1..c(2g-2), b
        pairs.add(frozenset(("a1", c)))
        pairs.add(frozenset(("x1", c)))
    for c in chain_names[: 2 * g - 3]:  # c1..c(2g-3)
        pairs.add(frozenset(("a2", c)))
        pairs.add(frozenset(("a3", c)))
    for c in ("a1", "r", "b"):
        pairs.add(frozenset(("x2", c)))
        pairs.add(frozenset(("a3", c)))
    pairs.discard(frozenset(("a1", "r")))  # a1 crosses r once
    for l in range(2, g - 1):
        for c in chain_names[: 2 * l - 1]:
            pairs.add(frozenset((f"d1_{l}", c)))
            pairs.add(frozenset((f"d2_{l}", c)))
        pairs.add(frozenset((f"d1_{l}", f"d2_{l}")))

    relations: dict[str, Relation] = {}
    relations["lantern3"] = Relation(
        "lantern3",
        twist("delta") * twist("a1") * twist("a2") * twist("y2"),
        twist("y1") * twist("x1") * twist("x2"),
        provenance="lantern on the sphere bounded by delta, a1, a2, y2",
    )
    relations["lantern4"] = Relation(
        "lantern4",
        twist("delta") * twist("y1") * twist("a3") * twist("a1"),
        twist("x3") * twist("x4") * twist("y2"),
        provenance="lantern on the sphere bounded by delta, y1, a3, a4=a1",
    )
    relations["daisy4"] = Relation(
        "daisy4",
        twist("delta", 2) * twist("a1") * twist("a2") * twist("a3") * twist("a1"),
        twist("x1") * twist("x2") * twist("x3") * twist("x4"),
        provenance="composite of the two lanterns of the embedded four-holed disk",
    )
    relations["chain_arb"] = Relation(
        "chain_arb",
        instantiate_chain_words(["a1", "r", "b"], 4),
        twist("x2") * twist("a3"),
        provenance="chain a1, r, b filling a genus-1 subsurface",
    )
    long_chain = chain_names[: 2 * g - 1]
    relations["chain_long"] = Relation(
        "chain_long",
        instantiate_chain_words(long_chain, 2 * g),
        twist("x1") * twist("a1"),
        provenance="chain c1..c(2g-2), b filling a genus-(g-1) subsurface",
    )
    relations["chain_sub"] = Relation(
        "chain_sub",
        instantiate_chain_words(chain_names[: 2 * g - 3], 2 * g - 2),
        twist("a2") * twist("a3"),
        provenance="chain c1..c(2g-3) filling a genus-(g-2) subsurface",
    )
    t1_word = (
        twist("r") * twist("a1") * twist("b") * twist("r")
        * (twist("a1") * twist("r") * twist("b")) ** 2
    )
    relations["t1_reduction"] = Relation(
        "t1_reduction",
        t1_word,
        twist("x2") * twist("a3") * twist("a1", -2),
        provenance="ten-twist rearrangement of the genus-1 chain relation",
    )
    t2_word = _braid_collar_word(long_chain)
    relations["t2_reduction"] = Relation(
        "t2_reduction",
        t2_word,
        twist("x1") * twist("a1") * twist("a2", -1) * twist("a3", -1),
        provenance="collar factor of the long chain's full twist over the short chain's",
    )
    for l in range(2, g + 1):
        sub = chain_names[: 2 * l - 1]
        d1, d2 = f"d1_{l}", f"d2_{l}"
        relations[f"chain_d{l}"] = Relation(
            f"chain_d{l}",
            instantiate_chain_words(sub, 2 * l),
            twist(d1) * twist(d2),
            provenance=f"chain c1..c{2 * l - 1} filling a genus-({l - 1}) subsurface",
        )
        tl_word = (
            _chain_word(sub[1:])
            * _chain_word(sub) ** (2 * l - 2)
            * _chain_word(sub[:-1])
        )
        relations[f"tl_reduction{l}"] = Relation(
            f"tl_reduction{l}",
            tl_word,
            twist(d1) * twist(d2) * twist(sub[0], -1) * twist(sub[-1], -1),
            provenance="rearrangement of the chain relation isolating its end twists",
        )

    formals = {
        "f1": FormalRecord("f1", (("x1", "a1"), ("a2", "x2")), identity_matrix(rank)),
        "f2": FormalRecord("f2", (("x3", "a3"), ("a1", "x4")), identity_matrix(rank)),
        "f3": FormalRecord("f3", (("a1", "x1"), ("x2", "a2")), identity_matrix(rank)),
        "fy": FormalRecord("fy", (("y1", "y2"),), identity_matrix(rank)),
    }
    for l in range(2, g + 1):
        formals[f"fch{l}"] = FormalRecord(
            f"fch{l}",
            ((f"d1_{l}", f"c{2 * l - 1}"), ("c1", f"d2_{l}")),
            _chain_witness_matrix(g, l),
        )

    return SurfaceConfig(
        name=f"surface_g{g}",
        genus=g,
        boundary_count=1,
        curves=curves,
        boundary_names=("delta",),
        disjoint_pairs=frozenset(pairs),
        pairing=standard_pairing(rank, g),
        aliases=aliases,
        formals=formals,
        relations=relations,
        pi1=_surface_pi1(g),
    )


def _chain_witness_matrix(g: int, l: int) -> tuple[tuple[int, ...], ...]:
    """Pairing-preserving matrix sending [d1_l] to +-f_l and [c1] to -+[d1_l].

    Acts by a GL_l(Z) block A on the meridian coordinates f_1..f_l and by
    (A^-1)^T on e_1..e_l; identity elsewhere.
    """
    from fractions import Fraction

    A = [[0] * l for _ in range(l)]
    ones = [1] * l
    # column 1 = A e_1 := -(1,..,1); columns 2..l-1 shift; last column fixed up
    for r in range(l):
        A[r][0] = -1
    for j in range(1, l - 1):
        A[j - 1][j] = 1
    if l >= 2:
        # A (1,..,1)^T = e_l  =>  last column = e_l - sum of the others
        partial = [sum(A[r][j] for j in range(l - 1)) for r in range(l)]
        for r in range(l):
            A[r][l - 1] = (1 if r == l - 1 else 0) - partial[r]

    # exact inverse transpose for the e-block
    n = l
    aug = [[Fraction(A[r][c]) for c in range(n)] + [Fraction(1 if c == r else 0) for c in range(n)] for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    Ainv = [[aug[r][n + c] for c in range(n)] for r in range(n)]
    assert all(x.denominator == 1 for row in Ainv for x in row)
    AinvT = [[int(Ainv[c][r]) for c in range(n)] for r in range(n)]

    rank = 2 * g
    m = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for r in range(l):
        for c in range(l):
            m[2 * r + 1][2 * c + 1] = A[r][c]
            m[2 * r][2 * c] = AinvT[r][c]
    return tuple(tuple(row) for row in m)


def _surface_pi1(g: int) -> Optional[Pi1Data]:
    if g != 2:
        return None
    return _genus2_pi1()


def _genus2_pi1() -> Optional[Pi1Data]:
    """Exact tables for the chain twists of the genus-2 surface; filled in by
    the calibration below (None until the search data is installed)."""
    return None


@lru_cache(maxsize=None)
def sections_config(h: int, l: int) -> SurfaceConfig:
    """Genus 8h-8+l surface with 4h-3 boundary components delta_i.

    Each nonzero index i in [2-2h, 2h-2] owns a genus-2 block carrying a copy
    of the embedded-lantern system (curves suffixed _pI / _mI for i = +-I);
    blocks are mutually disjoint, expressed through support tags.
    """
    if h < 1 or l < 0:
        raise ValueError("need h >= 1 and l >= 0")
    genus = 8 * h - 8 + l
    b = 4 * h - 3
    rank = 2 * genus + b - 1

    indices = [i for i in range(2 - 2 * h, 2 * h - 1)]
    nonzero = [i for i in indices if i != 0]

    def tag(i: int) -> str:
        return f"z{i}"

    def suffix(i: int) -> str:
        return f"_p{i}" if i > 0 else f"_m{-i}"

    # coordinate layout: per nonzero block 4 handle coords, then central
    # handles, then one boundary coordinate D_i per nonzero i
    block_base = {i: 4 * k for k, i in enumerate(nonzero)}
    dbase = 2 * genus

    def f1(i):
        return block_base[i] + 1

    def f2(i):
        return block_base[i] + 3

    def D(i):
        return dbase + nonzero.index(i)

    curves: dict[str, CurveRecord] = {}
    pairs: set[frozenset[str]] = set()
    supports: dict[str, str] = {}
    formals: dict[str, FormalRecord] = {}
    relations: dict[str, Relation] = {}

    zero_boundary = _vec(rank, {D(i): -1 for i in nonzero})
    curves["delta_0"] = CurveRecord("delta_0", zero_boundary, boundary_parallel=True)

    for i in nonzero:
        s = suffix(i)
        u = _vec(rank, {f1(i): 1, f2(i): 1})
        v = _vec(rank, {f1(i): 1})
        Dv = _vec(rank, {D(i): 1})
        names = {
            f"delta{s}": CurveRecord(f"delta{s}", Dv, boundary_parallel=True),
            f"a1{s}": CurveRecord(f"a1{s}", u),
            f"a2{s}": CurveRecord(f"a2{s}", v),
            f"a3{s}": CurveRecord(f"a3{s}", _vadd(Dv, _vneg(v))),
            f"x1{s}": CurveRecord(f"x1{s}", _vadd(Dv, _vneg(u))),
            f"x2{s}": CurveRecord(f"x2{s}", _vadd(Dv, _vneg(v))),
            f"x3{s}": CurveRecord(f"x3{s}", v),
            f"x4{s}": CurveRecord(f"x4{s}", _vadd(Dv, u)),
            f"y1{s}": CurveRecord(f"y1{s}", _vadd(u, v)),
            f"y2{s}": CurveRecord(f"y2{s}", _vadd(Dv, _vneg(u), _vneg(v))),
        }
        curves.update(names)
        for nm in names:
            supports[nm] = tag(i)

        local = {
            "delta": f"delta{s}", "a1": f"a1{s}", "a2": f"a2{s}", "a3": f"a3{s}",
            "x1": f"x1{s}", "x2": f"x2{s}", "x3": f"x3{s}", "x4": f"x4{s}",
            "y1": f"y1{s}", "y2": f"y2{s}",
        }
        pairs |= {frozenset((local["delta"], c)) for c in local.values() if c != local["delta"]}
        pairs |= _all_pairs([local["a1"], local["a2"], local["a3"]])
        for x in ("x1", "x2", "x3", "x4", "y1", "y2"):
            for a in ("a1", "a2", "a3"):
                pairs.add(frozenset((local[x], local[a])))
        pairs.add(frozenset((local["y1"], local["y2"])))
        pairs.add(frozenset((local["y1"], local["x3"])))
        pairs.add(frozenset((local["y1"], local["x4"])))
        pairs.add(frozenset((local["y2"], local["x1"])))
        pairs.add(frozenset((local["y2"], local["x2"])))

        relations[f"lantern3{s}"] = Relation(
            f"lantern3{s}",
            twist(local["delta"]) * twist(local["a1"]) * twist(local["a2"]) * twist(local["y2"]),
            twist(local["y1"]) * twist(local["x1"]) * twist(local["x2"]),
            provenance="lantern on the block's sphere delta, a1, a2, y2",
        )
        relations[f"lantern4{s}"] = Relation(
            f"lantern4{s}",
            twist(local["delta"]) * twist(local["y1"]) * twist(local["a3"]) * twist(local["a1"]),
            twist(local["x3"]) * twist(local["x4"]) * twist(local["y2"]),
            provenance="lantern on the block's sphere delta, y1, a3, a4=a1",
        )
        relations[f"daisy4{s}"] = Relation(
            f"daisy4{s}",
            twist(local["delta"], 2) * twist(local["a1"]) * twist(local["a2"])
            * twist(local["a3"]) * twist(local["a1"]),
            twist(local["x1"]) * twist(local["x2"]) * twist(local["x3"]) * twist(local["x4"]),
            provenance="composite of the block's two lanterns",
        )

        def refl(fmap: dict[int, tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
            """Block matrix: e-coords negated, f-coords per fmap, rest identity."""
            m = [[1 if r == c else 0 for c in range(rank)] for r in range(rank)]
            m[block_base[i]][block_base[i]] = -1
            m[block_base[i] + 2][block_base[i] + 2] = -1
            for src, vec in fmap.items():
                for r in range(rank):
                    m[r][src] = vec[r]
            return tuple(tuple(row) for row in m)

        DmF1 = _vec(rank, {D(i): 1, f1(i): -1})
        formals[f"f1{s}"] = FormalRecord(
            f"f1{s}", ((local["x1"], local["a1"]), (local["a2"], local["x2"])),
            refl({f1(i): DmF1, f2(i): _vec(rank, {f2(i): -1})}), support=tag(i),
        )
        formals[f"f2{s}"] = FormalRecord(
            f"f2{s}", ((local["x3"], local["a3"]), (local["a1"], local["x4"])),
            refl({f1(i): DmF1, f2(i): _vec(rank, {D(i): -2, f2(i): -1})}), support=tag(i),
        )
        formals[f"fy{s}"] = FormalRecord(
            f"fy{s}", ((local["y1"], local["y2"]),),
            refl({f1(i): _vec(rank, {f1(i): -1}), f2(i): _vec(rank, {D(i): 1, f2(i): -1})}),
            support=tag(i),
        )
        supports[f"f1{s}"] = tag(i)
        supports[f"f2{s}"] = tag(i)
        supports[f"fy{s}"] = tag(i)

    support_pairs = {frozenset((tag(i), tag(j))) for i in nonzero for j in nonzero if i < j}

    return SurfaceConfig(
        name=f"sections_h{h}_l{l}",
        genus=genus,
        boundary_count=b,
        curves=curves,
        boundary_names=tuple(
            f"delta{suffix(i)}" if i != 0 else "delta_0" for i in indices
        ),
        disjoint_pairs=frozenset(pairs),
        pairing=standard_pairing(rank, genus),
        formals=formals,
        relations=relations,
        supports=supports,
        support_pairs=frozenset(support_pairs),
    )


# --------------------------------------------------------------------------
# registry


def get_config(name: str) -> SurfaceConfig:
    """Look up a shipped configuration by name (e.g. torus, disk4, surface_g2)."""
    if name == "torus":
        return torus_config()
    if name.startswith("disk"):
        return disk_config(int(name[4:]))
    if name.startswith("chain"):
        return chain_config(int(name[5:]))
    if name.startswith("surface_g"):
        return surface_config(int(name[9:]))
    if name.startswith("sections_h"):
        body = name[len("sections_h"):]
        hpart, lpart = body.split("_l")
        return sections_config(int(hpart), int(lpart))
    raise KeyError(f"unknown configuration {name!r}")
