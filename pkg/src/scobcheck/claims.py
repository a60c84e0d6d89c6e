"""Registry of checkable claims and the report format used by ``verify-paper``.

Each claim pairs a procedure (a composition of the library's operations)
with an expectation:

``exact``
    a fixed value with a provenance tag: ``stated`` (given in the source
    text), ``trivial``, or ``derived`` (computed by a named oracle);
``recorded``
    a value generated once by an explicit ``--record-expectations`` run and
    checked in to ``fixtures/expectations.json``;
``flagged``
    a recorded value attached to a known discrepancy; matching it yields
    status ``flagged`` rather than ``pass``.

Procedures return ``(observed, witness)``. Enumerations that hit their
limits raise :class:`LimitsExceeded` and give status ``unknown``; any other
exception is contained in a ``fail`` report.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable

from .abelian import abelian_invariants, surgery_h1
from .builders import (FramedLinkDiagram, KirbyAlgebraicData, hatx_quotient_order, kirby_pi1,
                       klein_bundle, strong_action_admissible, surgery_group, twist_spun_trefoil)
from .cosets import EnumerationLimits, group_order
from .models import (FiniteTable, Homomorphism, IsoCertificate, check_hom, closure_order,
                     element_order, q8_semidirect_z, quaternion_group, special_linear_order, sl2_z3,
                     verify_virtually_cyclic_iso)
from .monodromy import fiber_monodromy_order, infinite_order_probe, isotopy_family_checks, \
    verify_matrix_identities
from .parsing import parse_presentation, parse_word
from .presentations import Presentation, add_relators, simplify
from .words import Word, render_word

FIXTURES = Path(__file__).with_name("fixtures")
EXPECTATIONS = FIXTURES / "expectations.json"

STATUSES = ("pass", "fail", "unknown", "flagged")

Q8_UV = "< u, v | u v u = v, v u v = u >"
G_TEXT = "< t, a | t^3 = a^3, a t a = t a t >"
M_TEXT = ("< tau, xi, t, x | t tau t^-1 = xi, t xi t^-1 = tau xi, "
          "x tau x^-1 = tau^-1, x xi x^-1 = xi^-1, t x t^-1 = x^-1 >")
HATX_N = range(1, 5)
HATX_M = range(1, 7)


class LimitsExceeded(Exception):
    pass


@dataclass(frozen=True)
class Expected:
    kind: str                      # exact | recorded | flagged
    value: Any = None
    provenance: str = ""           # stated | trivial | derived (exact only)
    note: str = ""


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    paper_anchor: str
    procedure: Callable[[EnumerationLimits], tuple[Any, dict]]
    expected: Expected
    demands_completion: bool = True


@dataclass
class ClaimReport:
    id: str
    status: str
    witness: dict = field(default_factory=dict)
    paper_anchor: str = ""
    ms: float = 0.0

    def as_dict(self, timing: bool = True) -> dict:
        return {"id": self.id, "status": self.status, "witness": self.witness,
                "paper_anchor": self.paper_anchor, "ms": round(self.ms, 1) if timing else 0}


# -- helpers -------------------------------------------------------------------


def _order(p: Presentation, limits: EnumerationLimits) -> int:
    n = group_order(p, limits)
    if n is None:
        raise LimitsExceeded(f"enumeration of {p.name or p} exceeded {limits.max_cosets} cosets")
    return n


def _table(p: Presentation, limits: EnumerationLimits) -> FiniteTable:
    _order(p, limits)
    return FiniteTable.from_presentation(p, limits=limits)


def _structure(ft: FiniteTable) -> dict:
    orders = [element_order(ft, e) for e in ft.elements()]
    cyc = ft.cyclic_subgroups()
    abelian = all(ft.mul(x, y) == ft.mul(y, x) for x in ft.elements() for y in ft.elements())
    return {
        "order": ft.order,
        "center_size": len(ft.center()),
        "order4_cyclic_subgroups": sum(1 for c in cyc if len(c) == 4),
        "involutions": orders.count(2),
        "abelian": abelian,
    }


Q8_STRUCTURE = {"order": 8, "center_size": 2, "order4_cyclic_subgroups": 3, "involutions": 1,
                "abelian": False}


def _fixture(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


def _diagram(name: str) -> FramedLinkDiagram:
    return FramedLinkDiagram.from_json(_fixture(name))


def _inv(p: Presentation) -> dict:
    return abelian_invariants(p).as_dict()


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Word):
        return render_word(x)
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


# -- procedures ------------------------------------------------------------------


def _q8_order(limits):
    p = parse_presentation(Q8_UV)
    n = _order(p, limits)
    return n, {"presentation": str(p)}


def _q8_structure(limits):
    p = parse_presentation(Q8_UV)
    ft = _table(p, limits)
    q8 = quaternion_group()
    h = Homomorphism(p, q8, {"u": q8.element("i"), "v": q8.element("j")})
    hc = check_hom(h)
    onto = closure_order(q8, [q8.element("i"), q8.element("j")])
    s = _structure(ft)
    return s, {"hom_to_quaternions": hc.passed, "image_order": onto,
               "iso_to_quaternions": hc.passed and onto == ft.order == 8}


def _g24(limits):
    g = twist_spun_trefoil(3)
    same = g == parse_presentation(G_TEXT)
    n = _order(add_relators(g, [Word.gen("t", 3)]), limits)
    return n, {"builder_matches_text": same, "quotient": "G / <<t^3>>"}


def _sl23(limits):
    g = twist_spun_trefoil(3)
    q = add_relators(g, [Word.gen("t", 3)], name="G/t^3")
    sl = sl2_z3()
    t_img, a_img = sl.generators
    hc = check_hom(Homomorphism(q, sl, {"t": t_img, "a": a_img}))
    closure = closure_order(sl, [t_img, a_img])
    src = _order(q, limits)
    observed = {"hom_passes": hc.passed, "image_closure_order": closure, "quotient_order": src,
                "sl2_3_order": special_linear_order(2, 3),
                "generator_orders": [element_order(sl, t_img), element_order(sl, a_img)]}
    return observed, {"images": {"t": sl.label(t_img), "a": sl.label(a_img)}}


def _g_abelian(limits):
    g = twist_spun_trefoil(3)
    return _inv(g), {"exponent_sums": "t, a -> 1"}


def _m_presentation(limits):
    fiber = Presentation(("tau", "xi"), ())
    tau, xi = Word.gen("tau"), Word.gen("xi")
    m = klein_bundle(fiber, {"tau": xi, "xi": tau * xi}, {"tau": ~tau, "xi": ~xi})
    expected = parse_presentation(M_TEXT)
    return m == expected, {"built": str(m), "abelianization": str(abelian_invariants(m))}


def _h_pi1(limits):
    m = parse_presentation(M_TEXT)
    h = add_relators(m, [parse_word("x t x^-1 t")], name="H")
    n = _order(h, limits)
    inv = _inv(h)
    simp = simplify(h)
    return {"order": n, **inv}, {"simplified": str(simp)}


def _certificate():
    g = twist_spun_trefoil(3)
    m = q8_semidirect_z()
    images = {"t": m.element("1", 1), "a": m.element("-i", 1)}
    witnesses = {m.element("i", 0): parse_word("t a^-1"), m.element("k", 0): parse_word("a^-1 t"),
                 m.base_step(): parse_word("t")}
    return IsoCertificate(Homomorphism(g, m, images), Word.gen("t", 3), witnesses)


def _fiber_iso(limits):
    cert = _certificate()
    rep = verify_virtually_cyclic_iso(cert, limits)
    d = rep.checks.get("d_quotient_orders", {})
    if rep.failed_at == "d_quotient_orders" and d.get("source_quotient_order") is None:
        raise LimitsExceeded("source quotient did not enumerate")
    h, m = cert.hom, cert.hom.target
    uv = [h(parse_word("t a^-1")), h(parse_word("a^-1 t"))]
    fiber_closure = closure_order(m, uv, bound=1000)
    observed = {"certificate": rep.passed, "quotient_orders": [d.get("source_quotient_order"),
                                                               d.get("target_quotient_order")],
                "fiber_closure_order": fiber_closure}
    return observed, {"checks": rep.checks, "images": {"t": "(1, 1)", "a": "(-i, 1)"},
                      "central_word": "t^3"}


def _surgery_q(limits):
    d = _diagram("hopf_circles.json")
    p = surgery_group(d, name="Q")
    ft = _table(p, limits)
    return _structure(ft), {"linking_matrix": d.linking_matrix().tolist(), "generators": len(p.generators)}


def _h1_q(limits):
    d = _diagram("hopf_circles.json")
    from_linking = surgery_h1(d.linking_matrix()).as_dict()
    from_group = _inv(surgery_group(d))
    prov = _diagram("two_component_provisional.json")
    provisional = surgery_h1(prov.linking_matrix()).as_dict()
    return {"linking": from_linking, "group": from_group, "two_component_provisional": provisional}, {
        "two_component_linking_matrix": prov.linking_matrix().tolist()}


def _gluck(limits):
    g = twist_spun_trefoil(3)
    return _order(add_relators(g, [Word.gen("t")]), limits), {"quotient": "G / <<t>>"}


def _w_cap(limits):
    p = parse_presentation(Q8_UV)
    return _order(add_relators(p, [Word.gen("u")]), limits), {"killed": "u (the element i)"}


def _t4(limits):
    g = twist_spun_trefoil(3)
    o4 = _order(add_relators(g, [Word.gen("t", 4)]), limits)
    o2 = _order(add_relators(g, [Word.gen("t", 2)]), limits)
    return {"G/<<t^4>>": o4, "G/<<t^2>>": o2}, {
        "note": "the 2-handle relation is stated as t^4 = 1 in one place and as twice the meridian "
                "in another; both quotients are reported without choosing"}


def _twist_family(limits):
    inv = {str(n): _inv(twist_spun_trefoil(n)) for n in range(1, 6)}
    meridian = {str(n): _order(add_relators(twist_spun_trefoil(n), [Word.gen("t")]), limits)
                for n in range(1, 7)}
    return {"abelianization": inv, "meridian_quotient_order": meridian}, {}


def hatx_grid(limits: EnumerationLimits) -> dict:
    grid = {}
    for n in HATX_N:
        row = []
        for m in HATX_M:
            k = hatx_quotient_order(n, m, limits)
            if k is None:
                raise LimitsExceeded(f"G{n}/<<t^{m}>> did not enumerate")
            row.append(k)
        grid[f"G{n}"] = row
    return grid


def _hatx(limits):
    return hatx_grid(limits), {"columns": [f"t^{m}" for m in HATX_M]}


def _matrix_ab(limits):
    rep = verify_matrix_identities()
    probe = infinite_order_probe()
    return rep.passed and probe.passed, {"checks": [c.as_dict() for c in rep.checks] + [probe.as_dict()]}


def _phi_order(limits):
    q8 = quaternion_group()
    return {"monodromy": fiber_monodromy_order(),
            "identity": fiber_monodromy_order({"i": "i", "j": "j"}),
            "fixes_minus_one": q8.label(q8.element("-1")) == "-1"}, {"action": "i -> j -> k -> i"}


def _isotopy(limits):
    rep = isotopy_family_checks()
    return rep.passed, {"checks": [c.as_dict() for c in rep.checks], "notes": rep.notes}


def _strong_action(limits):
    table = {str(m): strong_action_admissible(m) for m in range(1, 13)}
    return table, {"rule": "m not divisible by the monodromy order 3",
                   "monodromy_order": fiber_monodromy_order()}


def _kirby(limits):
    k = KirbyAlgebraicData.from_json(_fixture("kirby_g.json"))
    p = kirby_pi1(k, name="kirby")
    s = simplify(p)
    return {"abelianization": _inv(p),
            "t3_quotient_order": _order(add_relators(p, [Word.gen("t", 3)]), limits)}, {
        "simplified": str(s)}


# -- registry ------------------------------------------------------------------------

_STRUCT_EXPECT = Expected("exact", Q8_STRUCTURE, "derived", "quaternion group: center {1,-1}, three cyclic subgroups of order 4")

REGISTRY: tuple[Claim, ...] = (
    Claim("CS-Q8-ORDER", "the two-generator quaternion presentation has order 8",
          "quaternion presentation: <u, v | uvu = v, vuv = u> presents Q8",
          _q8_order, Expected("exact", 8, "stated")),
    Claim("CS-Q8-STRUCTURE", "the enumerated group is the quaternion group",
          "quaternion presentation: <u, v | uvu = v, vuv = u> presents Q8",
          _q8_structure, _STRUCT_EXPECT),
    Claim("CS-G-24", "G / <<t^3>> has order 24",
          "twist-spun trefoil group G = <t, a | t^3 = a^3, ata = tat>, |G/<t^3>| = 24",
          _g24, Expected("exact", 24, "stated")),
    Claim("CS-SL23-ISO", "G / <<t^3>> maps onto SL(2,3), both of order 24",
          "exact sequence 1 -> Z -> G -> SL(2, Z3) -> 1",
          _sl23, Expected("exact", {"hom_passes": True, "image_closure_order": 24, "quotient_order": 24,
                                    "sl2_3_order": 24, "generator_orders": [3, 3]}, "derived")),
    Claim("CS-G-ABELIAN", "G abelianizes to Z",
          "2-knot group G: H1 = Z",
          _g_abelian, Expected("exact", {"free_rank": 1, "torsion": []}, "trivial")),
    Claim("CS-M-PRESENTATION", "the Klein-bottle bundle builder reproduces the five-relator pi1(M)",
          "pi1(M): t tau t^-1 = xi, t xi t^-1 = tau xi, x tau x^-1 = tau^-1, x xi x^-1 = xi^-1, t x t^-1 = x^-1",
          _m_presentation, Expected("exact", True, "stated")),
    Claim("CS-H-PI1", "adding x t x^-1 t to pi1(M) gives a group of order 8 with H1 = Z2 + Z2",
          "2-handle h adds x t x^-1 t = 1; pi1(H) = Q8",
          _h_pi1, Expected("exact", {"order": 8, "free_rank": 0, "torsion": [2, 2]}, "derived")),
    Claim("CS-FIBER-ISO", "G is certified isomorphic to Q8 x| Z with monodromy i -> j -> k",
          "fibered 2-knot with fiber Q minus a ball and order-three monodromy",
          _fiber_iso, Expected("exact", {"certificate": True, "quotient_orders": [24, 24],
                                         "fiber_closure_order": 8}, "derived")),
    Claim("CS-SURGERY-Q", "-1 surgery on three Hopf circles has fundamental group Q8",
          "Q = S^3/Q8 as -1 surgery on three right-handed Hopf circles",
          _surgery_q, _STRUCT_EXPECT),
    Claim("CS-H1-Q", "H1 of the quaternionic space is Z2 + Z2",
          "H1(S^3/Q8) = Z2 + Z2; two-component link description (provisional framings)",
          _h1_q, Expected("exact", {"linking": {"free_rank": 0, "torsion": [2, 2]},
                                    "group": {"free_rank": 0, "torsion": [2, 2]},
                                    "two_component_provisional": {"free_rank": 0, "torsion": [2, 2]}},
                          "derived")),
    Claim("CS-GLUCK-PI1", "killing the meridian of G gives the trivial group",
          "Gluck twist / meridian filling of the 2-knot gives back a simply connected S^4",
          _gluck, Expected("exact", 1, "trivial")),
    Claim("CS-W-CAP", "Q8 modulo the loop u = i has order 2",
          "capping the b-loop of the quaternionic space: Q8/<<i>> = Z2",
          _w_cap, Expected("exact", 2, "derived")),
    Claim("CS-T4-QUOTIENT", "orders of G/<<t^4>> and G/<<t^2>>, reported side by side",
          "H1 handle relation t^4 = 1 versus attachment along twice the meridian",
          _t4, Expected("flagged", note="which quotient models pi1 of the capped manifold is not settled")),
    Claim("CS-TWIST-FAMILY", "twist-spun trefoils: H1 = Z for n = 1..5, meridian quotient trivial for n = 1..6",
          "G_n = <t, a | t^n = a^n, ata = tat>",
          _twist_family, Expected("exact", {
              "abelianization": {str(n): {"free_rank": 1, "torsion": []} for n in range(1, 6)},
              "meridian_quotient_order": {str(n): 1 for n in range(1, 7)}}, "trivial")),
    Claim("CS-HATX-GRID", "orders of G_n / <<t^m>> for n <= 4, m <= 6",
          "potentially nontrivial s-cobordisms from G_n and an order-m torsion loop",
          _hatx, Expected("recorded")),
    Claim("CS-MATRIX-AB", "A^2 = B^2, B^-1 A = -I, det A = det B = -1, A has infinite order",
          "torus bundle monodromies A = [[0,1],[1,1]], B = [[0,-1],[-1,-1]], C = B^-1 A",
          _matrix_ab, Expected("exact", True, "stated")),
    Claim("CS-PHI-ORDER-3", "the quaternion monodromy i -> j -> k has order 3",
          "order three self-diffeomorphism of Q permuting the circles P, Q, R",
          _phi_order, Expected("exact", {"monodromy": 3, "identity": 1, "fixes_minus_one": True}, "stated")),
    Claim("CS-ISOTOPY-DET", "phi_t joins Phi to diag(-1,1,-1) through invertible matrices",
          "phi_t = [[-t, 1-t, 0], [1-t, 1, 0], [0, 0, -1]], phi_0 = Phi",
          _isotopy, Expected("exact", True, "derived")),
    Claim("CS-STRONG-ACTION", "a strong Z_m action is admissible exactly when 3 does not divide m",
          "strong Z_m action for m != 0 mod 3",
          _strong_action, Expected("exact", {str(m): m % 3 != 0 for m in range(1, 13)}, "stated")),
    Claim("CS-KIRBY-G", "the handle relations of the 2-knot complement present a group like G",
          "relations x^-1 y t^-1 x^-1 t = 1, x^-1 y x y = 1, t x t^-1 y^-1 = 1",
          _kirby, Expected("exact", {"abelianization": {"free_rank": 1, "torsion": []},
                                     "t3_quotient_order": 24}, "derived")),
)

CLAIMS: dict[str, Claim] = {c.id: c for c in REGISTRY}


# -- running -------------------------------------------------------------------------


def load_expectations(path: Path | None = None) -> dict:
    path = Path(path or EXPECTATIONS)
    if not path.exists():
        return {}
    return json.loads(path.read_text(encoding="utf-8"))


def run_claim(claim: Claim, limits: EnumerationLimits, expectations: dict | None = None) -> ClaimReport:
    expectations = load_expectations() if expectations is None else expectations
    t0 = time.perf_counter()
    try:
        observed, extra = claim.procedure(limits)
    except LimitsExceeded as e:
        status, witness = "unknown", {"reason": str(e), "max_cosets": limits.max_cosets}
    except Exception as e:  # contained: a crashing procedure is a failed claim
        status, witness = "fail", {"error": f"{type(e).__name__}: {e}"}
    else:
        observed = _jsonable(observed)
        witness = {"observed": observed}
        exp = claim.expected
        if exp.kind == "exact":
            want = _jsonable(exp.value)
            status = "pass" if observed == want else "fail"
            witness["provenance"] = exp.provenance
            if status == "fail":
                witness["expected"] = want
        else:
            rec = expectations.get(claim.id)
            if rec is None:
                status = "fail"
                witness["expected"] = "missing: run verify-paper --record-expectations"
            elif observed != rec["value"]:
                status = "fail"
                witness["expected"] = rec["value"]
            else:
                status = "flagged" if exp.kind == "flagged" else "pass"
                witness["provenance"] = rec.get("provenance", "")
                witness["oracle"] = rec.get("oracle", "")
            if exp.note:
                witness["flag"] = exp.note
        witness.update(_jsonable(extra))
    return ClaimReport(claim.id, status, witness, claim.paper_anchor, (time.perf_counter() - t0) * 1000)


def select(selection: Iterable[str] | None = None) -> list[Claim]:
    if selection is None:
        return sorted(REGISTRY, key=lambda c: c.id)
    ids = list(selection)
    unknown = [i for i in ids if i not in CLAIMS]
    if unknown:
        raise KeyError(f"unknown claim ids: {', '.join(unknown)}")
    return sorted((CLAIMS[i] for i in dict.fromkeys(ids)), key=lambda c: c.id)


def run_claims(selection: Iterable[str] | None = None, limits: EnumerationLimits | None = None,
               expectations: dict | None = None) -> list[ClaimReport]:
    limits = limits or EnumerationLimits()
    expectations = load_expectations() if expectations is None else expectations
    return [run_claim(c, limits, expectations) for c in select(selection)]


def exit_code(reports: list[ClaimReport]) -> int:
    if any(r.status == "fail" for r in reports):
        return 1
    if any(r.status == "unknown" and CLAIMS[r.id].demands_completion for r in reports):
        return 3
    return 0


def report_json(reports: list[ClaimReport], timing: bool = True) -> str:
    return json.dumps({"claims": [r.as_dict(timing) for r in reports]}, indent=2, ensure_ascii=False) + "\n"


def report_text(reports: list[ClaimReport], timing: bool = True) -> str:
    lines = []
    for r in reports:
        obs = json.dumps(r.witness.get("observed", r.witness.get("error", r.witness.get("reason"))),
                         ensure_ascii=False)
        ms = f"{r.ms:8.1f} ms  " if timing else ""
        lines.append(f"{r.status.upper():8} {r.id:18} {ms}{obs}")
    counts = {s: sum(r.status == s for r in reports) for s in STATUSES}
    lines.append(", ".join(f"{n} {s}" for s, n in counts.items() if n))
    return "\n".join(lines) + "\n"


def record_expectations(path: Path | None = None, limits: EnumerationLimits | None = None) -> dict:
    """Compute the recorded claims under both strategies and write them out.

    Raises if the strategies disagree or an enumeration does not complete.
    """
    limits = limits or EnumerationLimits()
    out = {}
    for claim in select():
        if claim.expected.kind == "exact":
            continue
        values = []
        for strategy in ("hlt", "felsch"):
            observed, _ = claim.procedure(limits.with_strategy(strategy))
            values.append(_jsonable(observed))
        if values[0] != values[1]:
            raise RuntimeError(f"{claim.id}: strategies disagree: {values[0]} vs {values[1]}")
        out[claim.id] = {"value": values[0], "provenance": "derived",
                         "oracle": "coset enumeration (HLT and Felsch agree)"}
    path = Path(path or EXPECTATIONS)
    path.write_text(json.dumps(out, indent=2) + "\n", encoding="utf-8")
    return out
