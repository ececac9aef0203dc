"""Max-2-Sat instances: DIMACS parsing and exhaustive solving."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

MAX_BRUTEFORCE_VARS = 24


class SatFormatError(ValueError):
    pass


class SatBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Max2SatInstance:
    """Clauses are pairs of non-zero ints: ``j`` is x_j, ``-j`` its negation."""

    n: int
    clauses: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one variable")
        for c in self.clauses:
            if len(c) != 2:
                raise ValueError("not 2-CNF")
            for lit in c:
                if lit == 0 or abs(lit) > self.n:
                    raise ValueError(f"literal {lit} out of range")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied(self, assignment) -> int:
        """Number of clauses satisfied; ``assignment[j-1]`` is the value of x_j."""
        return sum(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def parse_dimacs(text: str) -> Max2SatInstance:
    n = None
    declared = None
    clauses: list[tuple[int, int]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if n is not None or len(parts) != 4 or parts[1] != "cnf":
                raise SatFormatError(f"line {lineno}: malformed header {line!r}")
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise SatFormatError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if n is None:
            raise SatFormatError(f"line {lineno}: clause before the 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise SatFormatError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if len(pending) != 2:
                    raise SatFormatError(f"line {lineno}: not 2-CNF (clause of width {len(pending)})")
                clauses.append((pending[0], pending[1]))
                pending = []
            elif abs(lit) > n:
                raise SatFormatError(f"line {lineno}: variable {abs(lit)} exceeds n={n}")
            else:
                pending.append(lit)
    if n is None:
        raise SatFormatError("line 1: missing 'p cnf' header")
    if pending:
        raise SatFormatError("unterminated clause at end of input")
    if declared is not None and declared != len(clauses):
        raise SatFormatError(f"header declares {declared} clauses, found {len(clauses)}")
    return Max2SatInstance(n, tuple(clauses))


def format_dimacs(inst: Max2SatInstance) -> str:
    lines = [f"p cnf {inst.n} {inst.m}"]
    lines += [f"{a} {b} 0" for a, b in inst.clauses]
    return "\n".join(lines) + "\n"


def max2sat_bruteforce(inst: Max2SatInstance) -> tuple[tuple[bool, ...], int]:
    """Best assignment and its satisfied count.

    Ties go to the lexicographically smallest assignment (False < True).
    """
    if inst.n > MAX_BRUTEFORCE_VARS:
        raise SatBudgetExceeded(f"budget-exceeded: {inst.n} variables > {MAX_BRUTEFORCE_VARS}")
    best, best_count = None, -1
    for bits in product((False, True), repeat=inst.n):
        c = inst.satisfied(bits)
        if c > best_count:
            best, best_count = bits, c
    return best, best_count


EXAMPLE_3_5 = Max2SatInstance(3, ((1, 2), (1, -2), (-1, 2), (-1, 3), (-2, -3)))
