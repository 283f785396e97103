"""Per-ideal systole reports and their JSON / CSV forms."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional

from .ideals import IdealHNF, factor_ideal, min_rational_integer
from .modular_group import in_gamma, order_sl2_prime_power
from .number_field import NumberField
from .systole import (
    SLACK,
    SearchResult,
    free_action_check,
    systole_lower_bound,
    theorem_bound,
    upper_bound_closed_form,
    upper_bound_index_form,
    upper_bound_witness,
    witness_matrix,
)

CSV_COLUMNS = ["field_label", "ideal", "norm", "order", "lower", "theorem",
               "upper_witness", "upper_closed", "empirical", "exhaustive"]


@dataclass
class SystoleReport:
    field_label: str
    ideal: object                   # the descriptor as given
    ideal_norm: int
    order: int                      # |SL2(O/I)|, reported as the index
    index_lower: int                # least positive integer in I
    free_action_certified: bool
    lower_bound_norm_form: float
    lower_bound_valid: bool
    theorem_bound: float
    upper_bound_witness_length: Optional[float]
    upper_bound_witness: Optional[list]
    upper_bound_witness_trace: Optional[int]
    upper_bound_closed_form: float
    upper_bound_index_form: float
    empirical_shortest: Optional[dict] = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    def csv_row(self) -> list:
        emp = self.empirical_shortest
        return [
            self.field_label,
            json.dumps(self.ideal, separators=(",", ":"), sort_keys=True),
            str(self.ideal_norm),
            str(self.order),
            _g(self.lower_bound_norm_form),
            _g(self.theorem_bound),
            _g(self.upper_bound_witness_length),
            _g(self.upper_bound_closed_form),
            _g(emp["length"]) if emp else "",
            str(emp["exhaustive"]).lower() if emp else "",
        ]


def _g(x) -> str:
    return "" if x is None else "%.10g" % x


def build_report(K: NumberField, I: IdealHNF, descriptor,
                 search: Optional[SearchResult] = None) -> SystoleReport:
    factors = factor_ideal(I)
    order = 1
    for P, k in factors:
        order *= order_sl2_prime_power(P, k)
    lb = systole_lower_bound(I)
    if I.norm > 2:
        w = upper_bound_witness(I)
        w_len, w_mat, w_tr = w.length, w.matrix.to_json(), w.trace
    else:
        w_len = w_mat = w_tr = None
    return SystoleReport(
        field_label=K.label,
        ideal=descriptor,
        ideal_norm=I.norm,
        order=order,
        index_lower=min_rational_integer(I),
        free_action_certified=free_action_check(I),
        lower_bound_norm_form=lb.value,
        lower_bound_valid=lb.valid,
        theorem_bound=theorem_bound(I, order),
        upper_bound_witness_length=w_len,
        upper_bound_witness=w_mat,
        upper_bound_witness_trace=w_tr,
        upper_bound_closed_form=upper_bound_closed_form(I),
        upper_bound_index_form=upper_bound_index_form(I, order),
        empirical_shortest=search.to_dict() if search is not None else None,
    )


def check_report(rep: SystoleReport, I: Optional[IdealHNF] = None) -> list:
    """Names of the internal invariants the report violates (empty if none)."""
    bad = []
    N, n = rep.ideal_norm, None
    if I is not None:
        n = I.field.degree
    if rep.theorem_bound > rep.lower_bound_norm_form + SLACK:
        bad.append("theorem_bound <= lower_bound_norm_form")
    if N > 1 and not rep.order < N ** 3:
        bad.append("order < N(I)^3")
    if n is not None and rep.index_lower ** n < N:
        bad.append("index_lower >= N(I)^(1/n)")
    if not rep.index_lower <= rep.order:
        bad.append("index_lower <= order")
    if rep.upper_bound_closed_form > rep.upper_bound_index_form + SLACK:
        bad.append("4 sqrt(n) log N <= 4 n^1.5 log order")
    if rep.upper_bound_witness_length is not None:
        if abs(rep.upper_bound_witness_trace) != N * N - 2:
            bad.append("|tr B| = N(I)^2 - 2")
        if rep.upper_bound_witness_length > rep.upper_bound_closed_form + SLACK:
            bad.append("witness length <= 4 sqrt(n) log N")
        if rep.lower_bound_valid and rep.lower_bound_norm_form > rep.upper_bound_witness_length + SLACK:
            bad.append("lower bound <= witness length")
        if I is not None:
            if not in_gamma(witness_matrix(I), I):
                bad.append("witness in Gamma(I)")
    emp = rep.empirical_shortest
    if emp is not None:
        if emp["lower_bound_violations"]:
            bad.append("every candidate length >= lower bound")
        if rep.lower_bound_valid and emp["length"] < rep.lower_bound_norm_form - SLACK:
            bad.append("lower bound <= empirical length")
        if rep.upper_bound_witness_length is not None and emp["length"] > rep.upper_bound_witness_length + SLACK:
            bad.append("empirical length <= witness length")
    return bad


def reports_to_csv(reports, header_lines=()) -> str:
    buf = io.StringIO()
    for line in header_lines:
        buf.write("# %s\n" % line)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rep in reports:
        writer.writerow(rep.csv_row())
    return buf.getvalue()
