"""Verification backends: homology transvections and exact pi1 automorphisms.

The homology backend sends a twist word to the product of transvections
x -> x + <x, [c]> [c]; equal words must act equally, so it is a cheap
necessary condition.  On the small verification surfaces the boundary-fixing
mapping classes act faithfully on the free fundamental group, so the pi1
backend decides equality exactly wherever tables are shipped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import BaseCurve, Formal, ImageCurve, Letter, Twist, Word

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


class BackendUnavailable(Exception):
    """A verification backend lacks the data it needs for this input."""


# --------------------------------------------------------------------------
# small exact matrix helpers


def unit_vector(n: int, j: int) -> Vector:
    return tuple(1 if i == j else 0 for i in range(n))


def mat_identity(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = list(zip(*b))
    return tuple(
        tuple(sum(a[i][k] * bt[j][k] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_vec(m: Matrix, v) -> Vector:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def mat_det(m: Matrix) -> int:
    """Determinant by fraction-free elimination (exact)."""
    from fractions import Fraction

    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def mat_inverse(m: Matrix) -> Matrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    from fractions import Fraction

    n = len(m)
    aug = [
        [Fraction(m[r][c]) for c in range(n)] + [Fraction(1 if c == r else 0) for c in range(n)]
        for r in range(n)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    out = []
    for r in range(n):
        row = aug[r][n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not invertible over the integers")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def pair(pairing: Matrix, u, v) -> int:
    """<u, v> = u^T J v for the stored pairing J."""
    n = len(pairing)
    return sum(u[i] * pairing[i][j] * v[j] for i in range(n) for j in range(n) if pairing[i][j])


def preserves_pairing(m: Matrix, pairing: Matrix) -> bool:
    n = len(m)
    cols = [mat_vec(m, unit_vector(n, j)) for j in range(n)]
    for i in range(n):
        for j in range(n):
            if pair(pairing, cols[i], cols[j]) != pairing[i][j]:
                return False
    return True


# --------------------------------------------------------------------------
# homology backend


@dataclass(frozen=True)
class HomologyAction:
    """Integer matrix action on H_1 of the configured surface."""

    matrix: Matrix

    def __mul__(self, other: "HomologyAction") -> "HomologyAction":
        return HomologyAction(mat_mul(self.matrix, other.matrix))

    def is_identity(self) -> bool:
        return self.matrix == mat_identity(len(self.matrix))

    def det(self) -> int:
        return mat_det(self.matrix)


def curve_vector(cfg, curve) -> Vector:
    """Homology class of a curve expression; image curves push the base
    class through the acting word's homology action."""
    if isinstance(curve, BaseCurve):
        return tuple(cfg.curve_record(curve.name).homology)
    if isinstance(curve, ImageCurve):
        base = curve_vector(cfg, curve.curve)
        return _apply_word_to_vector(curve.mapping, cfg, base)
    raise TypeError(f"not a curve: {curve!r}")


def _formal_matrices(cfg, name: str) -> tuple[Matrix, Matrix]:
    rec = cfg.formals.get(name)
    if rec is None or rec.h1_matrix is None:
        raise BackendUnavailable(f"formal symbol {name!r} has no declared homology action")
    return rec.h1_matrix, mat_inverse(rec.h1_matrix)


def _apply_letter_to_vector(letter: Letter, cfg, v: Vector) -> Vector:
    if isinstance(letter.gen, Twist):
        c = curve_vector(cfg, letter.gen.curve)
        coeff = letter.exponent * pair(cfg.pairing, v, c)
        if coeff:
            v = tuple(v[i] + coeff * c[i] for i in range(len(v)))
        return v
    m, minv = _formal_matrices(cfg, letter.gen.symbol)
    use = m if letter.exponent > 0 else minv
    for _ in range(abs(letter.exponent)):
        v = mat_vec(use, v)
    return v


def _apply_word_to_vector(w: Word, cfg, v: Vector) -> Vector:
    # rightmost letter acts first (functional order)
    for letter in reversed(w.letters):
        v = _apply_letter_to_vector(letter, cfg, v)
    return v


def h1_action(w: Word, cfg) -> HomologyAction:
    """Product of per-letter transvection powers in composition order."""
    n = cfg.rank
    cols = [_apply_word_to_vector(w, cfg, unit_vector(n, j)) for j in range(n)]
    matrix = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return HomologyAction(matrix)


# --------------------------------------------------------------------------
# exact pi1 backend


@dataclass(frozen=True)
class FreeAutomorphism:
    """Automorphism of the free pi1, with images of every generator."""

    generators: tuple[str, ...]
    images: tuple[tuple[str, tuple], ...]
    inverse_images: tuple[tuple[str, tuple], ...]

    def image_dict(self) -> dict:
        return dict(self.images)

    def inverse_dict(self) -> dict:
        return dict(self.inverse_images)

    def apply(self, word):
        return fw_apply(self.image_dict(), word)

    def is_identity(self) -> bool:
        return all(img == ((g, 1),) for g, img in self.images)


def fw_apply(images: dict, word) -> tuple:
    """Apply a generator-image substitution to a free word, reducing."""
    out: list = []
    for gen, exp in word:
        img = images[gen]
        reps = img if exp > 0 else tuple((g, -e) for g, e in reversed(img))
        for _ in range(abs(exp)):
            for g, e in reps:
                out.append((g, e))
    return _fw_reduce(out)


def _fw_reduce(pairs) -> tuple:
    stack: list[list] = []
    for g, e in pairs:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


def fw_invert(word) -> tuple:
    return tuple((g, -e) for g, e in reversed(word))


def abelianize(word, generators) -> Vector:
    idx = {g: i for i, g in enumerate(generators)}
    v = [0] * len(generators)
    for g, e in word:
        v[idx[g]] += e
    return tuple(v)


def _identity_automorphism(gens) -> FreeAutomorphism:
    images = tuple((g, ((g, 1),)) for g in gens)
    return FreeAutomorphism(tuple(gens), images, images)


def _compose(outer: FreeAutomorphism, inner: FreeAutomorphism) -> FreeAutomorphism:
    """outer after inner."""
    oi, oinv = outer.image_dict(), outer.inverse_dict()
    ii, iinv = inner.image_dict(), inner.inverse_dict()
    images = tuple((g, fw_apply(oi, ii[g])) for g in outer.generators)
    inverse = tuple((g, fw_apply(iinv, oinv[g])) for g in outer.generators)
    return FreeAutomorphism(outer.generators, images, inverse)


def _letter_automorphism(letter: Letter, cfg) -> FreeAutomorphism:
    pi1 = cfg.pi1
    if pi1 is None:
        raise BackendUnavailable(f"config {cfg.name!r} ships no pi1 tables")
    tables = pi1.table_dict()
    if isinstance(letter.gen, Twist):
        if not isinstance(letter.gen.curve, BaseCurve):
            raise BackendUnavailable("pi1 backend needs named curves")
        key = cfg.resolve(letter.gen.curve.name)
    else:
        key = letter.gen.symbol
    if key not in tables:
        raise BackendUnavailable(f"missing pi1 table for {key!r}")
    table = tables[key]
    base = FreeAutomorphism(pi1.generators, table.images, table.inverse_images)
    if letter.exponent < 0:
        base = FreeAutomorphism(pi1.generators, table.inverse_images, table.images)
    out = base
    for _ in range(abs(letter.exponent) - 1):
        out = _compose(base, out)
    return out


def pi1_apply(w: Word, cfg) -> FreeAutomorphism:
    """Compose the shipped automorphism tables along a word.

    Raises :class:`BackendUnavailable` when a letter has no table.
    """
    if cfg.pi1 is None:
        raise BackendUnavailable(f"config {cfg.name!r} ships no pi1 tables")
    out = _identity_automorphism(cfg.pi1.generators)
    for letter in reversed(w.letters):
        out = _compose(_letter_automorphism(letter, cfg), out)
    return out


def pi1_equal(w1: Word, w2: Word, cfg) -> bool:
    return pi1_apply(w1, cfg).images == pi1_apply(w2, cfg).images


def _cyclic_reduce(word) -> tuple:
    w = list(word)
    while len(w) > 1 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
        w = list(_fw_reduce(w))
    return tuple(w)


def _expand_units(word) -> list:
    out = []
    for g, e in word:
        step = 1 if e > 0 else -1
        out.extend((g, step) for _ in range(abs(e)))
    return out


def conjugate_or_inverse(w1, w2) -> bool:
    """Whether two free words agree up to conjugation and inversion.

    This is the right notion of 'same unoriented curve' for images of curve
    words under automorphisms.
    """
    a = _expand_units(_cyclic_reduce(_fw_reduce(w1)))
    for cand in (w2, fw_invert(w2)):
        b = _expand_units(_cyclic_reduce(_fw_reduce(cand)))
        if len(a) != len(b):
            continue
        if not a and not b:
            return True
        for shift in range(len(b)):
            if a == b[shift:] + b[:shift]:
                return True
    return False


def curve_image_matches(f: FreeAutomorphism, cfg, source: str, target: str) -> bool:
    """Check f(source-curve) = target-curve as unoriented free-homotopy classes."""
    pi1 = cfg.pi1
    if pi1 is None:
        raise BackendUnavailable(f"config {cfg.name!r} ships no pi1 tables")
    words = pi1.curve_word_dict()
    s, t = cfg.resolve(source), cfg.resolve(target)
    if s not in words or t not in words:
        raise BackendUnavailable("missing pi1 curve words")
    return conjugate_or_inverse(f.apply(words[s]), words[t])


# --------------------------------------------------------------------------
# genus-1 degree


def genus1_degree(w: Word, cfg) -> int:
    """Image in the H_1 of the mapping class group of the one-holed torus.

    Twists about nonseparating curves count 1 per exponent, the boundary
    twist counts 12; formal letters (commutator material) count 0.
    """
    if cfg.genus != 1 or cfg.boundary_count != 1:
        raise ValueError("genus-1 degree needs the one-holed torus config")
    total = 0
    for letter in w.letters:
        if isinstance(letter.gen, Formal):
            continue
        curve = letter.gen.curve
        if not isinstance(curve, BaseCurve):
            raise ValueError("degree needs named curves")
        rec = cfg.curve_record(curve.name)
        if rec.boundary_parallel:
            total += 12 * letter.exponent
        elif not rec.separating:
            total += letter.exponent
        else:
            raise ValueError(f"curve {curve.name!r} is separating; degree undefined here")
    return total
