"""Congruence test for kernels of modular-group representations.

For a representation of PSL(2, Z) whose image of T has order N, the kernel
is a congruence subgroup exactly when it contains Gamma(N). Because the
kernel is normal, that reduces to checking Hsu's finite generating set for
Gamma(N).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Union

from .braid import (
    BraidRep,
    Finiteness,
    RepSpec,
    RootFraction,
    factors_through_modular,
    projective_order,
    rowell_tuba,
    scale_to_modular,
    scaling_choices,
    tw_construct,
)
from .closure import DEFAULT_CLOSURE_CAP, enumerate_group
from .errors import DimensionMismatch, DoesNotFactor, OrderCapExceeded, RelationViolation
from .linalg import (
    DEFAULT_ORDER_CAP,
    CycMatrix,
    is_identity,
    mat_inverse,
    mat_order,
    root_of_unity_spectrum,
)
from .words import GroupWord, evaluate_word, hsu_generators

SOUNDNESS_NOTE = (
    "kernel is normal, so containing every listed generator is equivalent to "
    "containing their normal closure Gamma(N)"
)


@dataclass(frozen=True, eq=False)
class ModularRep:
    """Images X of T and Y of U; the defining relations of PSL(2, Z) are checked."""

    X: CycMatrix
    Y: CycMatrix

    def __post_init__(self):
        if self.X.dim != self.Y.dim:
            raise DimensionMismatch("X and Y must have equal dimension")
        Yinv = mat_inverse(self.Y)
        s = self.X @ Yinv @ self.X
        if not is_identity(s @ s):
            raise RelationViolation("(X Y^-1 X)^2 != I")
        r = Yinv @ self.X
        if not is_identity(r @ r @ r):
            raise RelationViolation("(Y^-1 X)^3 != I")

    @property
    def dim(self) -> int:
        return self.X.dim


def to_modular_rep(rep: BraidRep) -> ModularRep:
    """sigma_1 maps to T and sigma_2 to U^-1, so X = A and Y = B^-1."""
    if not factors_through_modular(rep):
        raise DoesNotFactor("the central element (s1 s2)^3 does not act trivially; scale first")
    return ModularRep(rep.A, mat_inverse(rep.B))


def geometric_level(m: ModularRep, cap: int = DEFAULT_ORDER_CAP) -> int:
    n = mat_order(m.X, cap)
    if n is None:
        raise OrderCapExceeded(f"image of T has no finite order <= {cap}")
    return n


@dataclass(frozen=True)
class Congruence:
    level: int
    type: str = "Congruence"


@dataclass(frozen=True)
class NonCongruence:
    witness: GroupWord
    label: str
    evaluated: CycMatrix
    failing: tuple[int, ...] = ()
    type: str = "NonCongruence"


@dataclass(frozen=True)
class NotApplicable:
    reason: str
    type: str = "NotApplicable"


Verdict = Union[Congruence, NonCongruence, NotApplicable]


@dataclass
class CongruenceReport:
    verdict: Verdict
    glevel: int | None = None
    spec: RepSpec | None = None
    theta: RootFraction | None = None
    po: int | None = None
    spectrum: list[RootFraction] | None = None
    image_order: int | None = None
    checked_words: int = 0
    finiteness: Finiteness | None = None
    finiteness_reason: str | None = None
    conditional: bool = False
    name: str | None = None
    notes: list[str] = field(default_factory=list)
    timings_ms: dict | None = None

    def __post_init__(self):
        if isinstance(self.verdict, Congruence) and self.verdict.level != self.glevel:
            raise AssertionError("a congruence verdict must report level == glevel")

    @property
    def is_congruence(self) -> bool:
        return isinstance(self.verdict, Congruence)

    def verdict_json(self) -> dict:
        v = self.verdict
        out: dict = {"type": v.type}
        if isinstance(v, Congruence):
            out["level"] = v.level
        elif isinstance(v, NonCongruence):
            out["witness"] = v.label
            out["witness_word"] = str(v.witness)
            out["evaluated_matrix"] = v.evaluated.to_strings()
            out["failing_words"] = list(v.failing)
        else:
            out["reason"] = v.reason
        return out

    def to_json(self) -> dict:
        return {
            "spec": None if self.spec is None else self.spec.to_json(),
            "theta": None if self.theta is None else str(self.theta),
            "po": self.po,
            "spectrum": None if self.spectrum is None else [str(e) for e in self.spectrum],
            "glevel": self.glevel,
            "verdict": self.verdict_json(),
            "image_order": self.image_order,
            "timings_ms": self.timings_ms,
            "name": self.name,
            "finiteness": None if self.finiteness is None else self.finiteness.value,
            "finiteness_reason": self.finiteness_reason,
            "conditional": self.conditional,
            "checked_words": self.checked_words,
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        v = self.verdict
        if isinstance(v, Congruence):
            head = f"Congruence, level {v.level}"
        elif isinstance(v, NonCongruence):
            head = f"NonCongruence at glevel {self.glevel}, witness {v.label}"
        else:
            head = f"NotApplicable: {v.reason}"
        if self.conditional:
            head += " (conditional: image not certified finite)"
        return head


def congruence_test(m: ModularRep, cap: int = DEFAULT_ORDER_CAP) -> CongruenceReport:
    """Check every Hsu generator of Gamma(glevel) against the representation."""
    try:
        N = geometric_level(m, cap)
    except OrderCapExceeded as exc:
        return CongruenceReport(NotApplicable(str(exc)))
    if N == 1:
        # T acts trivially, so its normal closure (the whole group) does too
        if not is_identity(m.Y):
            raise RelationViolation("X = I forces Y = I for a representation of PSL(2, Z)")
        return CongruenceReport(Congruence(1), glevel=1, notes=["level 1: the representation is trivial"])
    data = hsu_generators(N)
    cache: dict = {}
    failing = []
    first = None
    for i, word in enumerate(data.words):
        M = evaluate_word(word, m.X, m.Y, cache)
        if i == 0 and not is_identity(M):
            raise AssertionError(f"T^{N} does not evaluate to I although ord(X) = {N}")
        if not is_identity(M):
            failing.append(i)
            if first is None:
                first = (word, data.labels[i], M)
    checked = len(data.words)
    if first is None:
        verdict: Verdict = Congruence(N)
    else:
        verdict = NonCongruence(first[0], first[1], first[2], tuple(failing))
    return CongruenceReport(verdict, glevel=N, checked_words=checked, notes=[SOUNDNESS_NOTE])


def _spectrum(A: CycMatrix, cap: int) -> list[RootFraction] | None:
    pairs = root_of_unity_spectrum(A, cap)
    if pairs is None:
        return None
    return [RootFraction(k, n) for k, n in pairs]


def pipeline_from_rep(
    rep: BraidRep,
    theta: RootFraction | None = None,
    *,
    spec: RepSpec | None = None,
    finiteness: tuple[Finiteness, str] | None = None,
    order_cap: int = DEFAULT_ORDER_CAP,
    closure_cap: int = DEFAULT_CLOSURE_CAP,
    image_order: bool = False,
    name: str | None = None,
    timings: bool = False,
) -> CongruenceReport:
    """Scale a braid representation to the modular group and test its kernel."""
    start = time.perf_counter()
    spec = spec if spec is not None else (rep.spec or rep.eigen_spec())
    if spec is None:
        eigs = _spectrum(rep.A, order_cap)
        spec = None if eigs is None else RepSpec(rep.dim, tuple(eigs))
    if finiteness is None:
        finiteness = rowell_tuba(spec) if spec is not None else (Finiteness.INDETERMINATE, "no eigenvalue data")
    scaled, theta = scale_to_modular(rep, theta)
    m = to_modular_rep(scaled)
    spectrum = scaled.eigen_spec()
    spectrum = list(spectrum.eigs) if spectrum is not None else _spectrum(scaled.A, order_cap)
    po = None if spectrum is None else projective_order([e.to_cyc() for e in spectrum])

    report = congruence_test(m, order_cap)
    report.spec, report.theta, report.po, report.spectrum, report.name = spec, theta, po, spectrum, name
    fin, reason = finiteness
    order = None
    if fin is not Finiteness.FINITE or image_order:
        res = enumerate_group([m.X, m.Y], closure_cap)
        if res.finite:
            order = res.order
            if fin is not Finiteness.FINITE:
                fin, reason = Finiteness.FINITE, f"{reason}; closure found {res.order} elements"
        elif fin is Finiteness.INDETERMINATE:
            reason = f"{reason}; closure exceeded {closure_cap} elements"
    report.finiteness, report.finiteness_reason, report.image_order = fin, reason, order
    report.conditional = fin is not Finiteness.FINITE and not isinstance(report.verdict, NotApplicable)
    if report.is_congruence and po is not None and not 2 <= po <= 5:
        report.notes.append(f"po={po} lies outside [2, 5]; the level claim rests on Fricke-Wohlfahrt alone")
    if timings:
        report.timings_ms = {"total": round((time.perf_counter() - start) * 1000, 3)}
    return report


def full_pipeline(spec: RepSpec, theta: RootFraction | None = None, **kwargs) -> CongruenceReport:
    """Construct, classify finiteness, scale, and run the congruence test.

    An infinite image ends the run with a NotApplicable verdict.
    """
    start = time.perf_counter()
    rep = tw_construct(spec)
    fin = rowell_tuba(spec)
    if fin[0] is Finiteness.INFINITE:
        report = CongruenceReport(
            NotApplicable(f"infinite image ({fin[1]})"),
            spec=spec,
            po=projective_order(spec.eigenvalues()),
            finiteness=fin[0],
            finiteness_reason=fin[1],
            name=kwargs.get("name"),
        )
        if kwargs.get("timings"):
            report.timings_ms = {"total": round((time.perf_counter() - start) * 1000, 3)}
        return report
    return pipeline_from_rep(rep, theta, spec=spec, finiteness=fin, **kwargs)


def all_scalings(spec: RepSpec | None = None, rep: BraidRep | None = None, **kwargs) -> list[CongruenceReport]:
    """One report per root theta of x^6 - conj(central scalar)."""
    if rep is None:
        rep = tw_construct(spec)
    fin = rowell_tuba(spec) if spec is not None else None
    if fin is not None and fin[0] is Finiteness.INFINITE:
        return [full_pipeline(spec, None, **kwargs)]
    return [pipeline_from_rep(rep, t, spec=spec, finiteness=fin, **kwargs) for t in scaling_choices(rep)]
