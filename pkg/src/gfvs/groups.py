"""Group oracles.

A group is only ever touched through four operations: ``identity``, ``mul``,
``inv`` and ``eq``.  Algorithms never hash or order elements, so sets of
elements are kept as duplicate-free lists (see :func:`dedup`).

Shipped oracles: cyclic groups Z_n, elementary abelian 2-groups Z_2^m,
symmetric groups S_n and free groups over numbered generators.
"""
from __future__ import annotations

import itertools

from .errors import UsageError


class GroupElement:
    """An opaque element; its payload is meaningful only to ``group``."""

    __slots__ = ("group", "payload")

    def __init__(self, group: Group, payload):
        self.group = group
        self.payload = payload

    def __mul__(self, other: GroupElement) -> GroupElement:
        return self.group.mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group.eq(self, other)

    __hash__ = None

    def inverse(self) -> GroupElement:
        return self.group.inv(self)

    def is_identity(self) -> bool:
        return self.group.eq(self, self.group.identity())

    def __repr__(self):
        return f"<{self.group.descriptor()}: {self.group.format(self)}>"

    def __str__(self):
        return self.group.format(self)


class Group:
    """Base class of all oracles.

    Subclasses implement ``_mul``, ``_inv``, ``_identity_payload``,
    ``parse_payload``, ``format`` and ``random``.  Payloads are immutable and
    canonical, so equality of elements is payload equality.
    """

    kind = ""

    def params(self) -> tuple:
        return ()

    def descriptor(self) -> str:
        return " ".join([self.kind, *map(str, self.params())])

    def __eq__(self, other):
        return (
            isinstance(other, Group)
            and self.kind == other.kind
            and self.params() == other.params()
        )

    def __hash__(self):
        return hash((self.kind, self.params()))

    def __repr__(self):
        return f"Group({self.descriptor()!r})"

    def _own(self, a: GroupElement):
        if a.group is not self and a.group != self:
            raise UsageError(
                f"element of {a.group.descriptor()!r} used with {self.descriptor()!r}"
            )

    def element(self, payload) -> GroupElement:
        return GroupElement(self, payload)

    def identity(self) -> GroupElement:
        return GroupElement(self, self._identity_payload())

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._own(a)
        self._own(b)
        return GroupElement(self, self._mul(a.payload, b.payload))

    def inv(self, a: GroupElement) -> GroupElement:
        self._own(a)
        return GroupElement(self, self._inv(a.payload))

    def eq(self, a: GroupElement, b: GroupElement) -> bool:
        self._own(a)
        self._own(b)
        return a.payload == b.payload

    def is_identity(self, a: GroupElement) -> bool:
        return self.eq(a, self.identity())

    def product(self, elements) -> GroupElement:
        result = self.identity()
        for g in elements:
            result = self.mul(result, g)
        return result

    def parse(self, text: str) -> GroupElement:
        return GroupElement(self, self.parse_payload(text.strip()))

    def size(self):
        """Order of the group, or ``None`` when infinite."""
        return None


class CyclicGroup(Group):
    """Z_n under addition; payload is the residue."""

    kind = "cyclic"

    def __init__(self, n: int):
        if n < 1:
            raise UsageError(f"cyclic group order must be >= 1, got {n}")
        self.n = n

    def params(self):
        return (self.n,)

    def size(self):
        return self.n

    def _identity_payload(self):
        return 0

    def _mul(self, a, b):
        return (a + b) % self.n

    def _inv(self, a):
        return (-a) % self.n

    def parse_payload(self, text):
        try:
            value = int(text)
        except ValueError:
            raise UsageError(f"bad residue {text!r}") from None
        if not 0 <= value < self.n:
            raise UsageError(f"residue {value} outside Z_{self.n}")
        return value

    def format(self, a):
        return str(a.payload)

    def random(self, rng):
        return GroupElement(self, rng.randrange(self.n))

    def elements(self):
        return [GroupElement(self, i) for i in range(self.n)]


class PowerOfTwoGroup(Group):
    """Z_2^m; payload is a tuple of ``m`` bits, product is XOR."""

    kind = "z2pow"

    def __init__(self, m: int):
        if m < 1:
            raise UsageError(f"Z_2^m needs m >= 1, got {m}")
        self.m = m

    def params(self):
        return (self.m,)

    def size(self):
        return 2**self.m

    def _identity_payload(self):
        return (0,) * self.m

    def _mul(self, a, b):
        return tuple(x ^ y for x, y in zip(a, b))

    def _inv(self, a):
        return a

    def basis(self, i: int) -> GroupElement:
        """The ``i``-th standard basis vector."""
        bits = [0] * self.m
        bits[i] = 1
        return GroupElement(self, tuple(bits))

    def parse_payload(self, text):
        if len(text) != self.m or set(text) - {"0", "1"}:
            raise UsageError(f"expected a bitstring of length {self.m}, got {text!r}")
        return tuple(int(c) for c in text)

    def format(self, a):
        return "".join(map(str, a.payload))

    def random(self, rng):
        return GroupElement(self, tuple(rng.randrange(2) for _ in range(self.m)))

    def elements(self):
        return [GroupElement(self, bits) for bits in itertools.product((0, 1), repeat=self.m)]


class SymmetricGroup(Group):
    """S_n acting on {0..n-1}.

    A payload is the image tuple of a permutation.  ``mul(a, b)`` applies
    ``a`` first, then ``b``: ``(a*b)[i] == b[a[i]]``.
    """

    kind = "symmetric"

    def __init__(self, n: int):
        if n < 1:
            raise UsageError(f"symmetric group degree must be >= 1, got {n}")
        self.n = n

    def params(self):
        return (self.n,)

    def size(self):
        size = 1
        for i in range(2, self.n + 1):
            size *= i
        return size

    def _identity_payload(self):
        return tuple(range(self.n))

    def _mul(self, a, b):
        return tuple(b[i] for i in a)

    def _inv(self, a):
        out = [0] * self.n
        for i, image in enumerate(a):
            out[image] = i
        return tuple(out)

    def parse_payload(self, text):
        try:
            images = tuple(int(tok) for tok in text.split())
        except ValueError:
            raise UsageError(f"bad permutation {text!r}") from None
        if sorted(images) != list(range(self.n)):
            raise UsageError(f"{text!r} is not a permutation of 0..{self.n - 1}")
        return images

    def format(self, a):
        return " ".join(map(str, a.payload))

    def random(self, rng):
        images = list(range(self.n))
        rng.shuffle(images)
        return GroupElement(self, tuple(images))

    def elements(self):
        return [GroupElement(self, p) for p in itertools.permutations(range(self.n))]


class FreeGroup(Group):
    """Free group on generators ``g1..gN``.

    A payload is a freely reduced tuple of ``(generator, sign)`` tokens with
    sign +1 or -1, so equality of payloads solves the word problem.  With
    ``generators=None`` any positive generator id is accepted.
    """

    kind = "free"

    def __init__(self, generators: int | None = None):
        if generators is not None and generators < 1:
            raise UsageError(f"free group needs >= 1 generator, got {generators}")
        self.generators = generators

    def params(self):
        return () if self.generators is None else (self.generators,)

    def _identity_payload(self):
        return ()

    def _check_token(self, gen, sign):
        if sign not in (1, -1) or not isinstance(gen, int) or gen < 1:
            raise UsageError(f"bad free-group token {(gen, sign)!r}")
        if self.generators is not None and gen > self.generators:
            raise UsageError(f"unknown generator g{gen} (group has {self.generators})")

    def free_reduce(self, word) -> GroupElement:
        """Cancel adjacent inverse pairs until none remain."""
        out = []
        for gen, sign in word:
            self._check_token(gen, sign)
            if out and out[-1][0] == gen and out[-1][1] == -sign:
                out.pop()
            else:
                out.append((gen, sign))
        return GroupElement(self, tuple(out))

    def generator(self, gen: int, sign: int = 1) -> GroupElement:
        self._check_token(gen, sign)
        return GroupElement(self, ((gen, sign),))

    def _mul(self, a, b):
        # a and b are reduced, so cancellation only happens at the seam.
        i = 0
        limit = min(len(a), len(b))
        while i < limit and a[-1 - i][0] == b[i][0] and a[-1 - i][1] == -b[i][1]:
            i += 1
        return a[: len(a) - i] + b[i:]

    def _inv(self, a):
        return tuple((gen, -sign) for gen, sign in reversed(a))

    def parse_payload(self, text):
        if text == "e":
            return ()
        word = []
        for tok in text.split():
            body, caret = (tok[:-1], -1) if tok.endswith("^") else (tok, 1)
            if not (body.startswith("g") and body[1:].isdigit()):
                raise UsageError(f"bad free-group token {tok!r}")
            word.append((int(body[1:]), caret))
        return self.free_reduce(word).payload

    def format(self, a):
        if not a.payload:
            return "e"
        return " ".join(f"g{gen}" + ("" if sign == 1 else "^") for gen, sign in a.payload)

    def random(self, rng, max_length: int = 2):
        pool = self.generators or 3
        word = [
            (rng.randint(1, pool), rng.choice((1, -1)))
            for _ in range(rng.randint(0, max_length))
        ]
        return self.free_reduce(word)


GROUP_KINDS = {
    "cyclic": CyclicGroup,
    "z2pow": PowerOfTwoGroup,
    "symmetric": SymmetricGroup,
    "free": FreeGroup,
}


def make_group(descriptor: str) -> Group:
    """Build an oracle from a header such as ``"cyclic 3"`` or ``"free"``."""
    kind, *params = descriptor.split()
    if kind not in GROUP_KINDS:
        raise UsageError(f"unknown group kind {kind!r}")
    try:
        args = [int(p) for p in params]
    except ValueError:
        raise UsageError(f"bad group parameters {' '.join(params)!r}") from None
    cls = GROUP_KINDS[kind]
    if kind == "free":
        if len(args) > 1:
            raise UsageError("free group takes at most one parameter")
        return cls(*args)
    if len(args) != 1:
        raise UsageError(f"group {kind} takes exactly one parameter")
    return cls(args[0])


def contains(group: Group, items, g: GroupElement) -> bool:
    return any(group.eq(x, g) for x in items)


def dedup(group: Group, elements, limit: int | None = None) -> list:
    """Duplicate-free list of ``elements`` in first-seen order.

    Stops once ``limit`` distinct elements have been collected.
    """
    out = []
    for g in elements:
        if not contains(group, out, g):
            out.append(g)
            if limit is not None and len(out) >= limit:
                break
    return out
