"""Formula-versus-computation table.

Each row pairs a closed-form value with an independent computation (the
exhaustive solver, a strategy sandwich, or another bound) and records
whether they agree. Rows are described by picklable callables so they can
run in worker processes; output order never depends on completion order.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Iterable, Sequence

from . import formulas as fm
from . import graphcore as gc
from .solver import (DEFAULT_BUDGET, BudgetExceeded, classify, optimal_pebbling,
                     pebbling_number, pebbling_number_rooted)
from .wfl import certify_rooted, ortho_chain_strategies, para_chain_strategies

COLUMNS = ("section", "family", "params", "quantity", "formula", "computed", "method", "agree")
SECTIONS = ("2", "3", "4")


@dataclass(frozen=True)
class RowSpec:
    section: str
    family: str
    params: str
    quantity: str
    formula: Callable[[], int]
    compute: Callable[[int], tuple[int | None, str]]  # budget -> (value, method)


@dataclass(frozen=True)
class Row:
    section: str
    family: str
    params: str
    quantity: str
    formula: int | None
    computed: int | None
    method: str
    agree: bool
    note: str = ""

    def as_csv(self) -> list[str]:
        show = lambda v: "" if v is None else str(v)
        return [self.section, self.family, self.params, self.quantity,
                show(self.formula), show(self.computed), self.method,
                "yes" if self.agree else "no"]

    def to_json(self) -> dict:
        d = {k: getattr(self, k) for k in COLUMNS}
        if self.note:
            d["note"] = self.note
        return d


# --- computations (module level so they pickle) -------------------------------

def _value(res, method):
    return (res.value, method) if res.exhaustive else (None, "budget-exhausted")


def comp_pi(build, t, budget):
    return _value(pebbling_number(build(), t, budget=budget), "exhaustive")


def comp_pi_rooted(build, r, t, budget):
    return _value(pebbling_number_rooted(build(), r, t, budget=budget), "exhaustive")


def comp_opt(build, cap, budget):
    return _value(optimal_pebbling(build(), cap, budget=budget), "exhaustive")


def comp_sandwich(build, strategies, budget):
    cert = certify_rooted(build(), 0, strategies(), budget=budget)
    if cert.verdict == "exact":
        return cert.upper, "sandwich"
    return None, f"gap[{cert.witness_weight + 1},{cert.upper}]"


def comp_class(build, budget):
    g = build()
    cls = classify(g, budget)
    return {"Class0": g.order, "Class1": g.order + 1}.get(cls.value), "exhaustive"


def comp_value(fn, arg, budget):
    # formula-level rows: the "computed" side is a polymer bound
    return fn(arg).value, "formula-level"


def _f(fn, *args, attr="value"):
    return partial(_attr, fn, args, attr)


def _attr(fn, args, attr):
    return getattr(fn(*args), attr)


# --- row table -----------------------------------------------------------------

def _section2(max_n: int) -> list[RowSpec]:
    rows = []
    for m in range(3, 9):
        for t in (1, 2):
            rows.append(RowSpec("2", "cycle", f"m={m};t={t}", "pi_t", _f(fm.cycle_pi, m, t),
                                partial(comp_pi, partial(gc.make_cycle, m), t)))
    for n in range(2, max_n + 1):
        b = partial(gc.make_friendship, n, 3)
        rows.append(RowSpec("2", "friendship", f"n={n};m=3", "pi", _f(fm.friendship3_pi, n),
                            partial(comp_pi, b, 1)))
        rows.append(RowSpec("2", "friendship", f"n={n};m=3", "pi_star",
                            _f(fm.friendship3_optimal, n), partial(comp_opt, b, None)))
    for n in range(2, max_n + 2):
        b = partial(gc.make_friendship, n, 4)
        if n <= max_n:
            rows.append(RowSpec("2", "friendship", f"n={n};m=4", "pi",
                                _f(fm.fn4_suite, n, attr="pi"), partial(comp_pi, b, 1)))
            rows.append(RowSpec("2", "friendship", f"n={n};m=4", "pi_hub",
                                _f(fm.friendship_hub_pi, n, 2), partial(comp_pi_rooted, b, 0, 1)))
        rows.append(RowSpec("2", "friendship", f"n={n};m=4", "pi_star",
                            _f(fm.fn4_suite, n, attr="pi_star"), partial(comp_opt, b, None)))
        rows.append(RowSpec("2", "friendship", f"n={n};m=4", "pi_star_2",
                            _f(fm.fn4_suite, n, attr="pi_star_2"), partial(comp_opt, b, 2)))
    return rows


def _section3(max_n: int) -> list[RowSpec]:
    rows = []
    trees = {"path4": (None, 0, 1, 2), "star3": (None, 0, 0, 0),
             "spider322": (None, 0, 1, 2, 0, 4, 0, 6)}
    for name, parents in trees.items():
        b = partial(gc.make_tree, parents)
        leaf = len(parents) - 1
        for r, t in ((leaf, 1), (0, 2)):
            rows.append(RowSpec("3", "tree", f"{name};r={r};t={t}", "pi_t",
                                partial(comp_tree_formula_value, b, r, t),
                                partial(comp_pi_rooted, b, r, t)))
    for n in range(1, max_n + 1):
        for pendant in (False, True):
            if pendant and n > 2:
                continue
            tag = f"n={n};pendant={int(pendant)}"
            rows.append(RowSpec("3", "triangular_chain", tag, "pi",
                                _f(fm.triangular_chain_pi, n, pendant),
                                partial(comp_pi, partial(gc.make_triangular_chain, n, pendant), 1)))
    for n in range(1, max_n + 1):
        for kind, pendant in (("para", False), ("para", True), ("ortho", False)):
            if kind == "ortho" and n < 2:
                continue
            b = partial(gc.make_square_chain, n, kind, pendant)
            tag = f"n={n};kind={kind};pendant={int(pendant)}"
            if n <= 2:
                comp = partial(comp_pi, b, 1)
            else:
                strat = (partial(ortho_chain_strategies, n) if kind == "ortho"
                         else partial(para_chain_strategies, n, pendant))
                comp = partial(comp_sandwich, b, strat)
            rows.append(RowSpec("3", "square_chain", tag, "pi",
                                _f(fm.square_chain_pi, n, kind, pendant), comp))
    return rows


def comp_tree_formula_value(build, r, t):
    return fm.tree_pi(build(), r, t).value


def _section4(max_n: int) -> list[RowSpec]:
    rows = []
    b = partial(gc.make_Qnm, 3, 3)
    rows.append(RowSpec("4", "qnm", "n=3;m=3", "pi", _f(fm.qnm_pi, 3, 3, attr="pi"),
                        partial(comp_pi, b, 1)))
    rows.append(RowSpec("4", "qnm", "n=3;m=3", "pi_star", _f(fm.qnm_pi, 3, 3, attr="pi_star"),
                        partial(comp_opt, b, None)))
    rows.append(RowSpec("4", "corona", "K3oK1", "pi", _f(fm.corona_complete_pi, 3, 1, attr="pi"),
                        partial(comp_pi, partial(_corona_complete, 3, 1), 1)))
    rows.append(RowSpec("4", "hypercube", "d=3", "class0", partial(_const, 8),
                        partial(comp_class, partial(gc.make_hypercube, 3))))
    rows.append(RowSpec("4", "friendship", "n=2;m=3", "class1", partial(_const, 6),
                        partial(comp_class, partial(gc.make_friendship, 2, 3))))
    for n in range(1, max(max_n, 3) + 1):
        rows.append(RowSpec("4", "chain_bound", f"C4^{n}", "product_bound",
                            _f(fm.square_chain_pi, n), partial(comp_value, fm.product_bound, [4] * n)))
    for n in range(2, max(max_n, 4) + 1):
        rows.append(RowSpec("4", "bouquet_bound", f"C4^{n}", "bouquet_bound",
                            _f(fm.fn4_suite, n, attr="pi"),
                            partial(comp_value, fm.bouquet_bound, [4] * n)))
    return rows


def _corona_complete(n, h):
    return gc.make_corona(gc.make_complete(n), gc.make_complete(h))


def _const(v):
    return v


def rows_for(sections: Iterable[str], max_n: int = 3) -> list[RowSpec]:
    table = {"2": _section2, "3": _section3, "4": _section4}
    out = []
    for s in sections:
        if s not in table:
            raise ValueError(f"unknown section {s!r}; choose from {', '.join(SECTIONS)}")
        out.extend(table[s](max_n))
    return out


def run_row(spec: RowSpec, budget: int | None = DEFAULT_BUDGET) -> Row:
    try:
        expected = spec.formula()
    except fm.FormulaDomainError as exc:
        return Row(spec.section, spec.family, spec.params, spec.quantity, None, None,
                   "formula-domain", False, str(exc))
    try:
        computed, method = spec.compute(budget)
    except BudgetExceeded:
        computed, method = None, "budget-exhausted"
    agree = computed is not None and computed == expected
    note = ""
    if not agree:
        if computed is None:
            note = f"{spec.family} {spec.params} {spec.quantity}: no exact value ({method})"
        else:
            note = (f"{spec.family} {spec.params} {spec.quantity}: formula gives {expected}, "
                    f"{method} computation gives {computed}")
    return Row(spec.section, spec.family, spec.params, spec.quantity, expected, computed,
               method, agree, note)


def run(specs: Sequence[RowSpec], budget: int | None = DEFAULT_BUDGET, jobs: int = 1) -> list[Row]:
    if jobs <= 1:
        return [run_row(s, budget) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_row, specs, [budget] * len(specs)))


def to_csv(rows: Sequence[Row]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow(r.as_csv())
    return buf.getvalue()
