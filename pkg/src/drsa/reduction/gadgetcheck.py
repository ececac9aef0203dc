"""Gadget length tables: DP optimum against the stated lemma values."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..tiles import NoConnection, solve_tile_branching
from .tilesolve import build_template

CHECKED_KINDS = ("variable", "connection-h", "connection-v", "clause",
                 "splitter-h", "splitter-v", "crossing")


@dataclass(frozen=True)
class GadgetRow:
    kind: str
    case: str
    inputs: tuple
    outputs: tuple | None  # None: best over the outputs allowed by the case
    dp: int | None
    lemma: int | None

    @property
    def delta(self) -> int | None:
        if self.dp is None or self.lemma is None:
            return None
        return self.dp - self.lemma


def _params(kind, beta, gamma):
    return {"clause": (beta,), "splitter-h": (gamma,), "splitter-v": (gamma,),
            "crossing": (7,)}.get(kind, ())


def dp_table(kind: str, alpha: int, beta: int = 4, gamma: int = 5) -> dict:
    """Length for every (input parities, output parities) pair; None if impossible."""
    t = build_template(kind, alpha, _params(kind, beta, gamma))
    out = {}
    for ins in product((1, 0), repeat=len(t.inputs)):
        try:
            got = solve_tile_branching(t.problem(0, ins), all_results=True)
        except NoConnection:
            got = {}
        for outs in product((1, 0), repeat=len(t.outputs)):
            out[(ins, outs)] = got.get(outs)
    return out


def _best(table, ins, allowed):
    vals = [v for (i, o), v in table.items() if i == ins and allowed(o) and v is not None]
    return min(vals) if vals else None


def verify_gadget(kind: str, alpha: int, beta: int = 4, gamma: int = 5) -> list[GadgetRow]:
    """DP optimum and lemma value for each case the lemmas speak about."""
    a = alpha
    table = dp_table(kind, alpha, beta, gamma)
    rows = []

    def row(case, ins, allowed, lemma, outs=None):
        rows.append(GadgetRow(kind, case, ins, outs, _best(table, ins, allowed), lemma))

    if kind == "variable":
        row("true", (), lambda o: o == (1, 0), 4 * a + 5, (1, 0))
        row("false", (), lambda o: o == (0, 1), 4 * a + 5, (0, 1))
    elif kind.startswith("connection"):
        row("parity 1", (1,), lambda o: o == (1,), 4 * a + 2, (1,))
        row("parity 0", (0,), lambda o: o == (0,), 4 * a + 8, (0,))
    elif kind == "clause":
        row("both true", (1, 1), lambda o: True, 6 * a + 9)
        row("row true", (1, 0), lambda o: True, 6 * a + 10)
        row("column true", (0, 1), lambda o: True, 6 * a + 10)
        row("both false", (0, 0), lambda o: True, 6 * a + 11 + beta)
    elif kind.startswith("splitter"):
        L = 6 * a + gamma + 3
        row("true", (1,), lambda o: o == (1, 1), L, (1, 1))
        row("false", (0,), lambda o: o == (0, 0), L + 8, (0, 0))
        row("forbidden", (0,), lambda o: 1 in o, L + 1 + 2 * gamma)
    elif kind == "crossing":
        for ins in product((1, 0), repeat=2):
            lemma = sum(4 * a + 2 if p else 4 * a + 8 for p in ins)
            row(f"passes {ins[0]}{ins[1]}", ins, lambda o, ins=ins: o == ins, lemma, ins)
    else:
        raise ValueError(f"no lemma for tile kind {kind!r}")
    return rows


def differences(rows: list[GadgetRow]) -> dict[str, tuple]:
    """Parity-difference table: case -> (dp difference, lemma difference) vs the first row."""
    base = rows[0]
    out = {}
    for r in rows[1:]:
        dp = None if r.dp is None or base.dp is None else r.dp - base.dp
        out[r.case] = (dp, r.lemma - base.lemma)
    return out


def format_tsv(rows: list[GadgetRow]) -> str:
    lines = ["kind\tcase\tinputs\toutputs\tdp\tlemma\tdelta"]
    for r in rows:
        ins = "".join(map(str, r.inputs)) or "-"
        outs = "".join(map(str, r.outputs)) if r.outputs is not None else "best"
        lines.append(f"{r.kind}\t{r.case}\t{ins}\t{outs}\t{_s(r.dp)}\t{_s(r.lemma)}\t{_s(r.delta)}")
    return "\n".join(lines) + "\n"


def _s(v):
    return "none" if v is None else str(v)


SWEEP_KINDS = (("variable", ()), ("connection-h", ()), ("clause", (4,)), ("splitter-h", (5,)),
               ("crossing", (7,)), ("corner-h", ()), ("junction-h", (2,)), ("junction-h", (-2,)),
               ("root", (9, 9)))


def normalized_tables(alpha: int) -> dict:
    """Every sweep gadget's DP table with the 2*alpha per double terminal removed."""
    out = {}
    for kind, params in SWEEP_KINDS:
        t = build_template(kind, alpha, params)
        k = params[0] if kind == "root" else 0
        base = 2 * alpha * t.double_count()
        for ins in product((1, 0), repeat=len(t.inputs)):
            try:
                got = solve_tile_branching(t.problem(k, ins), all_results=True)
            except NoConnection:
                got = {}
            for outs, v in got.items():
                out[(kind, params, ins, outs)] = None if v is None else v - base
    return out


def alpha_sweep(alphas=range(1, 17)) -> int:
    """Smallest alpha whose normalized tables agree with every larger alpha swept."""
    alphas = sorted(alphas)
    tables = [normalized_tables(a) for a in alphas]
    best = alphas[-1]
    for i in range(len(alphas) - 1, -1, -1):
        if tables[i] != tables[-1]:
            break
        best = alphas[i]
    return best
