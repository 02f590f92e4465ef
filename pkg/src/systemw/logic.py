"""Propositional core: signatures, worlds, formulas, and conditionals.

Worlds over a signature with n atoms are the integers 0 .. 2^n - 1, where
bit i holds the truth value of atom i (in signature declaration order).
Model sets are integers over the world space: bit w of a formula's mask is
set iff world w satisfies the formula. All set algebra on models is plain
integer bit arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Iterator, Sequence

MAX_ATOMS = 24

_ATOM_RE = re.compile(r"\A[a-z][a-z0-9_]*\Z")


class SignatureError(ValueError):
    pass


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownAtomError(FormulaSyntaxError):
    def __init__(self, atom: str, position: int):
        super().__init__(f"unknown atom '{atom}'", position)
        self.atom = atom


class Signature:
    """Ordered set of distinct atom names; the order fixes world bit layout."""

    __slots__ = ("atoms", "_index", "num_atoms", "num_worlds", "full_mask", "_atom_masks")

    def __init__(self, atoms: Sequence[str]):
        atoms = tuple(atoms)
        for a in atoms:
            if not _ATOM_RE.match(a):
                raise SignatureError(f"invalid atom name: {a!r}")
        if len(set(atoms)) != len(atoms):
            raise SignatureError("atoms must be pairwise distinct")
        if len(atoms) > MAX_ATOMS:
            raise SignatureError(f"signature exceeds {MAX_ATOMS}-atom cap")
        self.atoms = atoms
        self._index = {a: i for i, a in enumerate(atoms)}
        self.num_atoms = len(atoms)
        self.num_worlds = 1 << len(atoms)
        self.full_mask = (1 << self.num_worlds) - 1
        self._atom_masks: dict[int, int] = {}

    def index(self, atom: str) -> int:
        try:
            return self._index[atom]
        except KeyError:
            raise SignatureError(f"atom {atom!r} not in signature") from None

    def __contains__(self, atom: str) -> bool:
        return atom in self._index

    def atom_mask(self, i: int) -> int:
        """Model mask of atom i: bit w set iff world w makes atom i true."""
        mask = self._atom_masks.get(i)
        if mask is None:
            half = 1 << i
            mask = ((1 << half) - 1) << half  # one period: low half 0s, high half 1s
            width = half << 1
            while width < self.num_worlds:
                mask |= mask << width
                width <<= 1
            self._atom_masks[i] = mask
        return mask

    def world(self, bits: int) -> "World":
        return World(self, bits)

    def worlds(self) -> Iterator["World"]:
        for bits in range(self.num_worlds):
            yield World(self, bits)

    def render_world(self, bits: int) -> str:
        """Literal string, signature order, '!' prefixing negated atoms."""
        if not self.atoms:
            return "-"
        return "".join(
            a if (bits >> i) & 1 else "!" + a for i, a in enumerate(self.atoms)
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Signature) and self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash(self.atoms)

    def __repr__(self) -> str:
        return f"Signature({', '.join(self.atoms)})"


@dataclass(frozen=True)
class World:
    signature: Signature
    bits: int

    def truth(self, atom: str) -> bool:
        return bool((self.bits >> self.signature.index(atom)) & 1)

    def __str__(self) -> str:
        return self.signature.render_world(self.bits)


def merge_worlds(w1: World, w2: World, target: Signature) -> World:
    """Combine worlds over disjoint signatures into one over their union."""
    a1, a2 = set(w1.signature.atoms), set(w2.signature.atoms)
    if a1 & a2:
        raise SignatureError(f"sub-signatures overlap: {sorted(a1 & a2)}")
    if set(target.atoms) != a1 | a2:
        raise SignatureError("target signature is not the union of the sub-signatures")
    bits = 0
    for i, atom in enumerate(target.atoms):
        src = w1 if atom in a1 else w2
        if src.truth(atom):
            bits |= 1 << i
    return World(target, bits)


def marginalize(world: World, sub: Signature) -> World:
    """Restrict a world's assignment to a sub-signature."""
    bits = 0
    for i, atom in enumerate(sub.atoms):
        if atom not in world.signature:
            raise SignatureError(f"atom {atom!r} not in the world's signature")
        if world.truth(atom):
            bits |= 1 << i
    return World(sub, bits)


# --- formula syntax trees ---------------------------------------------------

class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Top(Node):
    pass


@dataclass(frozen=True)
class Bot(Node):
    pass


@dataclass(frozen=True)
class Var(Node):
    name: str


@dataclass(frozen=True)
class Neg(Node):
    child: Node


@dataclass(frozen=True)
class Conj(Node):
    children: tuple


@dataclass(frozen=True)
class Disj(Node):
    children: tuple


def atoms_of(node: Node) -> frozenset:
    if isinstance(node, Var):
        return frozenset((node.name,))
    if isinstance(node, Neg):
        return atoms_of(node.child)
    if isinstance(node, (Conj, Disj)):
        return frozenset().union(*(atoms_of(c) for c in node.children))
    return frozenset()


def _node_mask(node: Node, sig: Signature) -> int:
    if isinstance(node, Var):
        return sig.atom_mask(sig.index(node.name))
    if isinstance(node, Neg):
        return sig.full_mask & ~_node_mask(node.child, sig)
    if isinstance(node, Conj):
        return reduce(lambda x, y: x & y, (_node_mask(c, sig) for c in node.children))
    if isinstance(node, Disj):
        return reduce(lambda x, y: x | y, (_node_mask(c, sig) for c in node.children))
    if isinstance(node, Top):
        return sig.full_mask
    if isinstance(node, Bot):
        return 0
    raise TypeError(f"not a formula node: {node!r}")


def _node_text(node: Node) -> str:
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Top):
        return "top"
    if isinstance(node, Bot):
        return "bot"
    if isinstance(node, Neg):
        inner = _node_text(node.child)
        if isinstance(node.child, (Conj, Disj)):
            return f"!({inner})"
        return "!" + inner
    if isinstance(node, Conj):
        parts = [
            f"({_node_text(c)})" if isinstance(c, Disj) else _node_text(c)
            for c in node.children
        ]
        return ",".join(parts)
    if isinstance(node, Disj):
        return ";".join(_node_text(c) for c in node.children)
    raise TypeError(f"not a formula node: {node!r}")


class Formula:
    """Syntax tree plus lazily cached model mask over the signature's worlds."""

    __slots__ = ("signature", "ast", "_mask")

    def __init__(self, signature: Signature, ast: Node):
        for atom in atoms_of(ast):
            if atom not in signature:
                raise SignatureError(f"atom {atom!r} not in signature")
        self.signature = signature
        self.ast = ast
        self._mask: int | None = None

    @property
    def mask(self) -> int:
        if self._mask is None:
            self._mask = _node_mask(self.ast, self.signature)
        return self._mask

    def models(self) -> frozenset:
        mask = self.mask
        return frozenset(
            World(self.signature, w)
            for w in range(self.signature.num_worlds)
            if (mask >> w) & 1
        )

    def satisfiable(self) -> bool:
        return self.mask != 0

    def is_tautology(self) -> bool:
        return self.mask == self.signature.full_mask

    def equivalent(self, other: "Formula") -> bool:
        if self.signature != other.signature:
            raise SignatureError("formulas over different signatures")
        return self.mask == other.mask

    def negate(self) -> "Formula":
        return Formula(self.signature, Neg(self.ast))

    def conj(self, other: "Formula") -> "Formula":
        if self.signature != other.signature:
            raise SignatureError("formulas over different signatures")
        return Formula(self.signature, Conj((self.ast, other.ast)))

    def __str__(self) -> str:
        return _node_text(self.ast)

    def __repr__(self) -> str:
        return f"Formula({self})"


# --- parser -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<atom>[a-z][a-z0-9_]*)|(?P<op>[!(),;&]))")


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.pos = 0
        self.tok: str | None = None
        self.tok_pos = 0
        self._advance()

    def _advance(self):
        m = _TOKEN_RE.match(self.text, self.pos)
        if m is None:
            rest = self.text[self.pos:].lstrip()
            if rest:
                at = len(self.text) - len(rest)
                raise FormulaSyntaxError(f"unexpected character {rest[0]!r}", at)
            self.tok = None
            self.tok_pos = len(self.text)
            return
        self.tok = m.group("atom") or m.group("op")
        self.tok_pos = m.start("atom") if m.group("atom") else m.start("op")
        self.pos = m.end()

    def parse(self) -> Node:
        node = self._disj()
        if self.tok is not None:
            raise FormulaSyntaxError(f"unexpected token {self.tok!r}", self.tok_pos)
        return node

    def _disj(self) -> Node:
        children = [self._conj()]
        while self.tok == ";":
            self._advance()
            children.append(self._conj())
        return children[0] if len(children) == 1 else Disj(tuple(children))

    def _conj(self) -> Node:
        children = [self._lit()]
        while self.tok in (",", "&"):
            self._advance()
            children.append(self._lit())
        return children[0] if len(children) == 1 else Conj(tuple(children))

    def _lit(self) -> Node:
        tok, at = self.tok, self.tok_pos
        if tok == "!":
            self._advance()
            return Neg(self._lit())
        if tok == "(":
            self._advance()
            node = self._disj()
            if self.tok != ")":
                raise FormulaSyntaxError("expected ')'", self.tok_pos)
            self._advance()
            return node
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", at)
        if tok in (")", ",", ";", "&"):
            raise FormulaSyntaxError(f"unexpected token {tok!r}", at)
        self._advance()
        if tok == "top":
            return Top()
        if tok == "bot":
            return Bot()
        if tok not in self.sig:
            raise UnknownAtomError(tok, at)
        return Var(tok)


def parse_formula(text: str, sig: Signature) -> Formula:
    """Parse text per the grammar: ';' disjunction, ','/'&' conjunction, '!' negation."""
    return Formula(sig, _Parser(text, sig).parse())


# --- conditionals and belief bases -------------------------------------------

class ConditionalStatus(Enum):
    VERIFIED = "verified"
    FALSIFIED = "falsified"
    NOT_APPLICABLE = "not applicable"


class Conditional:
    """Defeasible rule (B|A): 'if A then usually B'."""

    __slots__ = ("antecedent", "consequent")

    def __init__(self, antecedent: Formula, consequent: Formula):
        if antecedent.signature != consequent.signature:
            raise SignatureError("antecedent and consequent over different signatures")
        self.antecedent = antecedent
        self.consequent = consequent

    @property
    def signature(self) -> Signature:
        return self.antecedent.signature

    @property
    def verification_mask(self) -> int:
        return self.antecedent.mask & self.consequent.mask

    @property
    def falsification_mask(self) -> int:
        return self.antecedent.mask & ~self.consequent.mask & self.signature.full_mask

    def atoms(self) -> frozenset:
        return atoms_of(self.antecedent.ast) | atoms_of(self.consequent.ast)

    def evaluate(self, world: World) -> ConditionalStatus:
        if world.signature != self.signature:
            raise SignatureError("world over a different signature")
        w = world.bits
        if (self.verification_mask >> w) & 1:
            return ConditionalStatus.VERIFIED
        if (self.falsification_mask >> w) & 1:
            return ConditionalStatus.FALSIFIED
        return ConditionalStatus.NOT_APPLICABLE

    def __str__(self) -> str:
        return f"({self.consequent}|{self.antecedent})"

    def __repr__(self) -> str:
        return f"Conditional{self}"


def parse_conditional(text: str, sig: Signature) -> Conditional:
    """Parse '(B|A)' with the consequent before the bar."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise FormulaSyntaxError("conditional must be enclosed in parentheses", 0)
    body = s[1:-1]
    if body.count("|") != 1:
        raise FormulaSyntaxError("conditional needs exactly one '|'", s.find("|"))
    cons_text, ante_text = body.split("|")
    return Conditional(parse_formula(ante_text, sig), parse_formula(cons_text, sig))


class BeliefBase:
    """Ordered finite set of conditionals; positions are stable 0-based indices."""

    __slots__ = ("signature", "conditionals")

    def __init__(self, signature: Signature, conditionals: Sequence[Conditional]):
        conditionals = tuple(conditionals)
        for c in conditionals:
            if c.signature != signature:
                raise SignatureError("conditional over a different signature")
        self.signature = signature
        self.conditionals = conditionals

    def __len__(self) -> int:
        return len(self.conditionals)

    def __iter__(self) -> Iterator[Conditional]:
        return iter(self.conditionals)

    def __getitem__(self, i: int) -> Conditional:
        return self.conditionals[i]

    def indices(self) -> range:
        return range(len(self.conditionals))

    def __repr__(self) -> str:
        return f"BeliefBase({', '.join(str(c) for c in self.conditionals)})"


def mod_set(f: Formula) -> frozenset:
    """Exact model set of a formula as a set of worlds."""
    return f.models()


def evaluate_conditional(c: Conditional, world: World) -> ConditionalStatus:
    return c.evaluate(world)
