"""Duality pairing between U_q(su(2)) and Fun_q(SU(2)).

On generators the pairing is the two-dimensional representation.  It extends
to words through ``<U, f_1 ... f_n> = <Delta^(n-1) U, f_1 (x) ... (x) f_n>``,
``<U, 1> = eps(U)`` and ``<1, f> = eps(f)``.

The table only lists ``k`` and ``e``, ``e*``.  The ``k^-1`` row is not listed,
and reading "everything else pairs to zero" literally would contradict
``<k k^-1, a> = eps(a) = 1``.  The row is therefore solved from
``<k k^-1, g> = <k^-1 k, g> = eps(g)`` when the pairing is built.
"""

from __future__ import annotations

import functools

from .coeff import ZERO, Scalar, solve_linear
from .hopf import antipode, counit, funq, iterated_coproduct, uq
from .ncpoly import Element, Presentation, Word

# (U generator, f expression, value): <U, f> = value
PAIRING_TABLE = (
    ("k", "a", "q^(1/2)"),
    ("k", "as", "q^(-1/2)"),
    ("e", "-q*bs", "1"),
    ("es", "b", "1"),
)


class PairingError(ValueError):
    """The pairing table is inconsistent with the Hopf structures."""


class Pairing:
    """Bilinear pairing ``<U, f>`` with memoization on word pairs."""

    def __init__(self, U: Presentation, F: Presentation, table=PAIRING_TABLE):
        self.U = U
        self.F = F
        self.table: dict[tuple[int, int], Scalar] = {}
        listed = set()
        for ugen, fexpr, value in table:
            f = F.parse(fexpr)
            (word, c), = f.terms.items()
            if len(word) != 1:
                raise PairingError(f"table entry <{ugen}, {fexpr}> is not on a generator")
            self.table[(U.index[ugen], word[0])] = Scalar.parse(value) / c
            listed.add(U.index[ugen])
        for u in listed:
            for g in range(len(F.generators)):
                self.table.setdefault((u, g), ZERO)
        for u, uinv in U.inverses.items():
            if u in listed and uinv not in listed:
                self._derive_inverse_row(u, uinv)
        self._letter: dict = {}
        self._words: dict = {}
        defects = self.relation_defects(1)
        if defects:
            raise PairingError(f"pairing does not respect the relations: {defects[0]}")

    def _derive_inverse_row(self, u: int, uinv: int) -> None:
        """Solve ``<u uinv, g> = <uinv u, g> = eps(g)`` for the row of ``uinv``."""
        F = self.F
        ngen = len(F.generators)
        columns = [dict() for _ in range(ngen)]
        target = {}
        for g in range(ngen):
            delta = F.hopf.coproduct_table[g]
            for side in (0, 1):
                row = (g, side)
                target[row] = F.hopf.counit_table[g]
                for (left, right), c in delta.terms.items():
                    (lg,), (rg,) = left, right
                    known = self.table[(u, lg)] if side == 0 else self.table[(u, rg)]
                    unknown = rg if side == 0 else lg
                    if known:
                        columns[unknown][row] = columns[unknown].get(row, ZERO) + c * known
        try:
            solution = solve_linear(columns, target)
        except ValueError as exc:
            raise PairingError(f"cannot derive the pairing row of {self.U.generators[uinv]}: {exc}")
        for g, value in enumerate(solution):
            self.table[(uinv, g)] = value

    def relation_defects(self, max_length: int = 2) -> list[tuple[str, str, Scalar]]:
        """Pair raw defining relations against short words of the other algebra.

        A well-defined pairing must give 0; returns ``(relation, word, value)``
        for each violation.
        """
        out = []
        for rel_side, other, flip in ((self.F, self.U, False), (self.U, self.F, True)):
            for rel in rel_side.relations:
                raw = rel_side._free(rel).terms
                for w in other.words(max_length):
                    total = ZERO
                    for v, c in raw.items():
                        total = total + c * (self.pair_words(v, w) if flip else self.pair_words(w, v))
                    if total:
                        out.append((rel, other.word_str(w), total))
        return out

    # words -------------------------------------------------------------

    def pair_letter(self, uword: Word, g: int) -> Scalar:
        """``<u, g>`` for a U-word and a single Fun generator."""
        key = (uword, g)
        cached = self._letter.get(key)
        if cached is None:
            if not uword:
                cached = self.F.hopf.counit_table[g]
            elif len(uword) == 1:
                cached = self.table[(uword[0], g)]
            else:
                cached = ZERO
                for ((lg,), (rg,)), c in self.F.hopf.coproduct_table[g].terms.items():
                    left = self.pair_letter(uword[:1], lg)
                    if left:
                        cached = cached + c * left * self.pair_letter(uword[1:], rg)
            self._letter[key] = cached
        return cached

    def pair_words(self, uword: Word, fword: Word) -> Scalar:
        key = (uword, fword)
        cached = self._words.get(key)
        if cached is None:
            if not fword:
                cached = self.U.hopf.counit_word(uword)
            elif not uword:
                cached = self.F.hopf.counit_word(fword)
            else:
                cached = ZERO
                for parts, c in self.U.hopf.iterated_word(uword, len(fword)).items():
                    value = c
                    for piece, g in zip(parts, fword):
                        value = value * self.pair_letter(piece, g)
                        if not value:
                            break
                    if value:
                        cached = cached + value
            self._words[key] = cached
        return cached

    def pair(self, U: Element, f: Element) -> Scalar:
        if U.presentation is not self.U or f.presentation is not self.F:
            raise ValueError("pair expects (U_q(su(2)) element, Fun_q(SU(2)) element)")
        total = ZERO
        for u, c in U.terms.items():
            for w, d in f.terms.items():
                value = self.pair_words(u, w)
                if value:
                    total = total + c * d * value
        return total

    def pair_via_fun_coproduct(self, U: Element, f: Element) -> Scalar:
        """Independent route: iterate the coproduct of ``f`` instead of ``U``.

        ``<u_1 ... u_m, f> = <u_1 (x) ... (x) u_m, Delta^(m-1) f>`` and each
        ``<u_i, f-word>`` expands ``Delta u_i`` (generators stay generators).
        """
        total = ZERO
        for u, c in U.terms.items():
            if not u:
                total = total + c * counit(f)
                continue
            for parts, d in iterated_coproduct(f, len(u)).terms.items():
                value = c * d
                for letter, fw in zip(u, parts):
                    value = value * self._letter_vs_fword(letter, fw)
                    if not value:
                        break
                total = total + value
        return total

    def _letter_vs_fword(self, letter: int, fword: Word) -> Scalar:
        if not fword:
            return self.U.hopf.counit_table[letter]
        total = ZERO
        for parts, c in self.U.hopf.iterated_word((letter,), len(fword)).items():
            value = c
            for (u,), g in zip(parts, fword):
                value = value * self.table.get((u, g), ZERO)
                if not value:
                    break
            total = total + value
        return total

    def check_star_compat(self, U: Element, f: Element) -> bool:
        """``<U*, f> == conj <U, (S f)*>``."""
        return self.pair(U.star(), f) == self.pair(U, antipode(f).star()).conjugate()

    def table_rows(self) -> dict[tuple[str, str], Scalar]:
        return {
            (self.U.generators[u], self.F.generators[g]): v for (u, g), v in sorted(self.table.items())
        }


@functools.cache
def default_pairing() -> Pairing:
    return Pairing(uq(), funq())


def pair(U: Element, f: Element) -> Scalar:
    return default_pairing().pair(U, f)


def check_star_compat(U: Element, f: Element) -> bool:
    return default_pairing().check_star_compat(U, f)
