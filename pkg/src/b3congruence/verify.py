"""Verification suites over the built-in catalog."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .braid import RepSpec, projective_order
from .catalog import (
    RHO_G_THETA,
    CaseDescriptor,
    find_case,
    mtc_examples,
    noncongruence_family,
    noncongruence_name,
    theorem_a_cases,
)
from .congruence import (
    Congruence,
    CongruenceReport,
    NonCongruence,
    full_pipeline,
    pipeline_from_rep,
    to_modular_rep,
)
from .cyclotomic import root_of_unity
from .linalg import mat_apply, mat_order, vec_mat
from .words import evaluate_word, hsu_generators, hsu_oracle, parse_word


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    report: CongruenceReport | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "details": self.details}
        if self.report is not None:
            out["report"] = self.report.to_json()
        return out

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        info = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{status}  {self.name}  {info}"


def check_case(case: CaseDescriptor, image_order: bool = False, timings: bool = False) -> CheckResult:
    report = full_pipeline(case.spec, image_order=image_order, name=case.name, timings=timings)
    level = report.verdict.level if isinstance(report.verdict, Congruence) else None
    passed = level is not None and level == case.expected_level
    details = {"expected": case.expected_level, "got": level, "verdict": report.verdict.type,
               "source": case.level_source}
    return CheckResult(case.name, passed, details, report)


def _check_case_by_name(args) -> CheckResult:
    name, image_order, timings = args
    return check_case(find_case(name), image_order, timings)


def verify_theorem_a(only: list[str] | None = None, jobs: int = 1, image_order: bool = False,
                     timings: bool = False) -> list[CheckResult]:
    """Every finite-image family case must be Congruence at its expected level."""
    cases = [find_case(n) for n in only] if only else theorem_a_cases()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_check_case_by_name, [(c.name, image_order, timings) for c in cases]))
    return [check_case(c, image_order, timings) for c in cases]


def witness_row_eigen(M, ell: int) -> bool:
    """(0,0,1) M = e^(-2 pi i/ell) (0,0,1)."""
    lam = root_of_unity(-1, ell)
    return vec_mat((0, 0, 1), M) == (0, 0, lam)


def witness_column_eigen(M, ell: int) -> bool:
    """M (0,0,1)^t = e^(-2 pi i/ell) (0,0,1)^t."""
    lam = root_of_unity(-1, ell)
    return mat_apply(M, (0, 0, 1)) == (0, 0, lam)


def check_noncongruence(ell: int, sign: int, timings: bool = False) -> CheckResult:
    rep = noncongruence_family(ell, sign)
    report = pipeline_from_rep(rep, name=noncongruence_name(ell, sign), timings=timings)
    m = to_modular_rep(rep)
    po = projective_order(rep.spec.eigenvalues())
    order = mat_order(m.X)
    label = f"[T^{3 * ell + 1}, U^{3 * ell}]"
    data = hsu_generators(6 * ell)
    present = label in data.labels and parse_word(label) in data.words
    M = evaluate_word(parse_word(label), m.X, m.Y)
    v = report.verdict
    details = {
        "po": po,
        "order_X": order,
        "glevel": report.glevel,
        "verdict": v.type,
        "witness": v.label if isinstance(v, NonCongruence) else None,
        "witness_in_G": present,
        "row_eigenvector": witness_row_eigen(M, ell),
        "column_eigenvector": witness_column_eigen(M, ell),
    }
    passed = (
        po == 2 * ell
        and order == 6 * ell
        and report.glevel == 6 * ell
        and isinstance(v, NonCongruence)
        and present
        and details["row_eigenvector"]
    )
    return CheckResult(noncongruence_name(ell, sign), passed, details, report)


def verify_theorem_b(ells=(3, 5, 7, 9), timings: bool = False) -> list[CheckResult]:
    return [check_noncongruence(ell, s, timings) for ell in ells for s in (1, -1)]


def verify_hsu(n_min: int = 2, n_max: int = 60) -> CheckResult:
    bad = hsu_oracle(n_min, n_max)
    words = sum(len(hsu_generators(N).words) for N in range(n_min, n_max + 1))
    return CheckResult(f"hsu-oracle N={n_min}..{n_max}", not bad,
                       {"words": words, "failures": [f"N={N} #{i} {lab}" for N, i, lab, _ in bad]})


EXPECTED_MTC_PO = {"MTC:C": 2, "MTC:D": 3, "MTC:sigma": 4, "MTC:G": 6}


def verify_mtc(timings: bool = False) -> list[CheckResult]:
    out = []
    for name, obj in mtc_examples():
        if isinstance(obj, RepSpec):
            report = full_pipeline(obj, name=name, timings=timings)
            po = projective_order(obj.eigenvalues())
            ok = po == EXPECTED_MTC_PO[name] and isinstance(report.verdict, Congruence)
            out.append(CheckResult(name, ok, {"po": po, "verdict": report.verdict.type,
                                              "level": report.glevel}, report))
        else:
            report = pipeline_from_rep(obj, RHO_G_THETA, name=name, timings=timings)
            spectrum = sorted(str(e) for e in report.spectrum)
            expected = sorted(["1/9", "11/18", "5/18"])
            ok = spectrum == expected and isinstance(report.verdict, NonCongruence)
            out.append(CheckResult(name, ok, {"theta": str(RHO_G_THETA), "spectrum": spectrum,
                                              "po": report.po, "verdict": report.verdict.type}, report))
    return out
