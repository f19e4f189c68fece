"""Vertex sets, index subsets and strings of subsets.

Chart systems are indexed by nonempty subsets of a finite vertex set, and
the degree-p layer of a cochain is indexed by strings (finite sequences) of
such subsets.  Cochains are antisymmetric in the string entries, so only
strictly increasing strings are ever stored; ``sort_with_sign`` converts an
arbitrary string to its increasing form together with the permutation sign
(zero for a repeated entry).
"""

from __future__ import annotations

from itertools import combinations


class VertexSet:
    """Finite ordered set of vertex labels."""

    __slots__ = ("labels", "_rank")

    def __init__(self, labels):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate vertex label")
        if not labels:
            raise ValueError("vertex set must be nonempty")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_rank", {v: i for i, v in enumerate(labels)})

    def __setattr__(self, *a):
        raise AttributeError("VertexSet is immutable")

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self._rank

    def rank(self, label: str) -> int:
        return self._rank[label]

    def subset(self, members) -> "Subset":
        members = [str(m) for m in members]
        for m in members:
            if m not in self._rank:
                raise ValueError(f"unknown vertex {m!r}")
        if not members:
            raise ValueError("subsets of the vertex set must be nonempty")
        pairs = sorted({(self._rank[m], m) for m in members})
        return Subset(tuple(p[1] for p in pairs), tuple(p[0] for p in pairs))

    def singleton(self, label) -> "Subset":
        return self.subset([label])

    def all_subsets(self) -> "list[Subset]":
        """Every nonempty subset, in the canonical total order."""
        out = []
        for r in range(1, len(self.labels) + 1):
            for combo in combinations(range(len(self.labels)), r):
                out.append(Subset(tuple(self.labels[i] for i in combo), combo))
        out.sort()
        return out

    def __eq__(self, other):
        return isinstance(other, VertexSet) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"VertexSet({list(self.labels)!r})"


class Subset:
    """Nonempty subset of a vertex set, kept in rank-sorted order.

    Equality and hashing use the member labels; the rank key orders subsets
    lexicographically on their sorted member lists, which is the total order
    used to canonicalize strings.  Construct through VertexSet.subset.
    """

    __slots__ = ("members", "key")

    def __init__(self, members: tuple, key: tuple):
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "key", key)

    def __setattr__(self, *a):
        raise AttributeError("Subset is immutable")

    def __len__(self):
        return len(self.members)

    def __contains__(self, label):
        return label in self.members

    def __iter__(self):
        return iter(self.members)

    def issubset(self, other: "Subset") -> bool:
        return set(self.members) <= set(other.members)

    def union(self, other: "Subset") -> "Subset":
        pairs = sorted(set(zip(self.key, self.members)) | set(zip(other.key, other.members)))
        return Subset(tuple(p[1] for p in pairs), tuple(p[0] for p in pairs))

    def __eq__(self, other):
        return isinstance(other, Subset) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __lt__(self, other: "Subset"):
        return self.key < other.key

    def __le__(self, other: "Subset"):
        return self.key <= other.key

    def __repr__(self):
        return "{" + ",".join(self.members) + "}"


# A string is a plain tuple of Subset entries.


def union_of(string) -> Subset:
    """Union of all entries of a nonempty string."""
    if not string:
        raise ValueError("empty string has no union")
    out = string[0]
    for s in string[1:]:
        out = out.union(s)
    return out


def remove_at(string, k: int):
    """The string with entry k dropped."""
    return string[:k] + string[k + 1 :]


def insert_at(string, k: int, entry):
    return string[:k] + (entry,) + string[k:]


def sort_with_sign(string):
    """Canonicalize a string of subsets.

    Returns (sign, sorted_string).  The sign is the parity of the sorting
    permutation, or 0 when two entries coincide (then sorted_string is None).
    """
    keys = [e.key for e in string]
    if len(set(keys)) != len(keys):
        return 0, None
    indexed = sorted(range(len(string)), key=lambda i: keys[i])
    # parity by counting inversions of the permutation
    inv = 0
    for a in range(len(indexed)):
        for b in range(a + 1, len(indexed)):
            if indexed[a] > indexed[b]:
                inv += 1
    return (-1) ** inv, tuple(string[i] for i in indexed)


def map_string(index_map, string):
    """Apply a subset-to-subset mapping entrywise."""
    return tuple(index_map[e] for e in string)


def vertex_string(vset: VertexSet, labels):
    """String of singleton subsets, the small-complex indexing."""
    return tuple(vset.singleton(x) for x in labels)
