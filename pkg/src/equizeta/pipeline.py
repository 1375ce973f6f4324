"""Problem descriptions and the analyze / verify / classical computations.

Every report is a plain dict of JSON-ready values; the CLI only formats them.
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .burnside import (
    BurnsideElement,
    CyclotomicFunction,
    NonIntegralCoefficient,
    ind_ext,
    orbit_invariant,
    red,
    to_cyclotomic,
    zeta_equivariant,
)
from .qhpoly import (
    QuasiPolynomial,
    full_symmetry_group,
    generated_group,
    monodromy_element,
    monodromy_group,
    symmetry_group,
)
from .repr_ring import (
    CharacterSpace,
    expand,
    log_map,
    log_poincare,
    poincare_closed,
    poincare_counted,
    tau,
)
from .strata_euler import NOT_ISOLATED, compute_strata, milnor_algebra_oracle, milnor_number
from .torsion_lattice import TorsionVector, cyclic

GROUP_CHOICES = ("full-symmetry", "monodromy-cyclic", "generators")

# Or_X(t) = prod_m (1 - t^m)^(ORBIT_EXPONENT_SIGN * chi_m); fixed by calibrate_orbit_sign
ORBIT_EXPONENT_SIGN = 1


class SpecError(ValueError):
    """Malformed problem description (exit code 4)."""


class UnsupportedGroup(ValueError):
    pass


def parse_rational(s):
    if isinstance(s, bool):
        raise SpecError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str) and re.fullmatch(r"\s*[-+]?\d+\s*(/\s*\d+\s*)?", s):
        try:
            return Fraction(s.replace(" ", ""))
        except ZeroDivisionError:
            raise SpecError(f"zero denominator in {s!r}") from None
    raise SpecError(f"not a rational: {s!r}")


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_TERM = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_polynomial(text, variables=None):
    """Parse sums of terms like '2*x^2*y', '-3/2 y^3', 'x**2'.  Returns (variables, terms)."""
    src = text.replace("**", "^").replace(" ", "")
    if not src:
        raise SpecError("empty polynomial")
    names = variables or sorted(set(re.findall(r"[A-Za-z_]\w*", src)))
    idx = {v: i for i, v in enumerate(names)}
    terms = {}
    pos = 0
    for m in _TERM.finditer(src):
        if m.start() != pos:
            raise SpecError(f"cannot parse {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(sign)
        exps = [0] * len(names)
        for factor in m.group(2).split("*"):
            if not factor:
                raise SpecError(f"cannot parse {text!r}")
            fm = re.fullmatch(r"(\d+(?:/\d+)?)?(?:([A-Za-z_]\w*)(?:\^(\d+))?)?", factor)
            if not fm:
                raise SpecError(f"cannot parse factor {factor!r}")
            if fm.group(1):
                coeff *= parse_rational(fm.group(1))
            if fm.group(2):
                if fm.group(2) not in idx:
                    raise SpecError(f"unknown variable {fm.group(2)!r}")
                exps[idx[fm.group(2)]] += int(fm.group(3) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    if pos != len(src):
        raise SpecError(f"cannot parse {text!r}")
    return list(names), {k: c for k, c in terms.items() if c}


def _parse_J(key, n):
    try:
        J = tuple(sorted(int(s) - 1 for s in str(key).split(",") if s.strip()))
    except ValueError:
        raise SpecError(f"bad index set {key!r}") from None
    if any(j < 0 or j >= n for j in J) or not J:
        raise SpecError(f"index set {key!r} out of range 1..{n}")
    return J


@dataclass
class ProblemSpec:
    variables: list
    terms: dict
    group: str = "monodromy-cyclic"
    generators: list = field(default_factory=list)
    truncation: int = 12
    overrides: dict = field(default_factory=dict)
    name: str = None

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, (str, bytes)):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise SpecError(f"invalid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise SpecError("problem description must be a JSON object")
        try:
            if "polynomial" in doc and "terms" not in doc:
                variables, terms = parse_polynomial(doc["polynomial"], doc.get("variables"))
            else:
                variables = list(doc["variables"])
                terms = {}
                for t in doc["terms"]:
                    exps = tuple(t["exps"])
                    if len(exps) != len(variables) or any(
                            not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in exps):
                        raise SpecError(f"bad exponent vector {list(exps)}")
                    if exps in terms:
                        raise SpecError(f"repeated exponent vector {list(exps)}")
                    terms[exps] = parse_rational(t.get("coeff", "1"))
            group = doc.get("group", {"type": "monodromy-cyclic"})
            if isinstance(group, str):
                group = {"type": group}
            gtype = group.get("type")
            if gtype not in GROUP_CHOICES:
                raise SpecError(f"unknown group type {gtype!r}")
            gens = []
            for g in group.get("generators", []):
                if len(g) != len(variables):
                    raise SpecError(f"generator {g} has wrong length")
                gens.append([parse_rational(x) for x in g])
            D = doc.get("truncation", 12)
            if not isinstance(D, int) or isinstance(D, bool) or D < 0:
                raise SpecError(f"truncation must be a nonnegative integer, got {D!r}")
            n = len(variables)
            overrides = {}
            for kind in ("chi_V", "chi_Y"):
                raw = doc.get("overrides", {}).get(kind, {})
                parsed = {}
                for key, val in raw.items():
                    if not isinstance(val, int) or isinstance(val, bool):
                        raise SpecError(f"override {kind}[{key}] must be an integer")
                    parsed[_parse_J(key, n)] = val
                if parsed:
                    overrides[kind] = parsed
        except (KeyError, TypeError, AttributeError) as exc:
            raise SpecError(f"malformed problem description: {exc!r}") from None
        return cls(variables, terms, gtype, gens, D, overrides, doc.get("name"))

    def polynomial(self):
        return QuasiPolynomial(len(self.variables), self.terms, tuple(self.variables))

    def extended_group(self, p):
        if self.group == "full-symmetry":
            return full_symmetry_group(p)
        if self.group == "monodromy-cyclic":
            return monodromy_group(p)
        return generated_group(p, [TorsionVector(tuple(g)) for g in self.generators])

    def to_json(self):
        doc = {
            "variables": list(self.variables),
            "terms": [{"exps": list(k), "coeff": format_rational(c)} for k, c in sorted(self.terms.items())],
            "group": {"type": self.group},
            "truncation": self.truncation,
        }
        if self.generators:
            doc["group"]["generators"] = [[format_rational(x) for x in g] for g in self.generators]
        if self.overrides:
            doc["overrides"] = {kind: {",".join(str(j + 1) for j in J): v for J, v in vals.items()}
                                for kind, vals in self.overrides.items()}
        if self.name:
            doc["name"] = self.name
        return doc


# --- serialization -----------------------------------------------------------


def ser_vector(v):
    return [format_rational(c) for c in v.coords]


def ser_subgroup(H):
    return {"N": H.N, "basis": [list(r) for r in H.basis], "order": H.order}


def ser_element(a):
    return [{"subgroup": ser_subgroup(H), "coeff": c} for H, c in a.items()]


def ser_character(a):
    return {"k": a.k, "chi": list(a.chi)}


def ser_J(J):
    return [j + 1 for j in J]


def ser_series(s):
    return [{"char": ser_character(a), "coeff": c}
            for a, c in sorted(s.items(), key=lambda t: (-t[0].k, t[0].chi))]


def ser_cyclotomic(phi):
    return {"exponents": [[m, e] for m, e in phi.s], "text": str(phi)}


# --- computations --------------------------------------------------------------


class Problem:
    """One polynomial with one group choice, computed lazily."""

    def __init__(self, spec):
        self.spec = spec
        self.p = spec.polynomial()
        self.w = self.p.weights
        self.Gbar = spec.extended_group(self.p)
        self.G = self.Gbar.finite_part
        self.h = monodromy_element(self.p)
        self._strata = None
        self._space = None

    @property
    def strata(self):
        if self._strata is None:
            self._strata = compute_strata(self.p, self.Gbar, self.spec.overrides)
        return self._strata

    @property
    def space(self):
        if self._space is None:
            self._space = CharacterSpace(self.Gbar)
        return self._space

    def zeta(self):
        return zeta_equivariant(self.strata, self.G, self.h)

    def orbit(self):
        return orbit_invariant(self.strata, self.Gbar)


def _group_info(G):
    return {"order": G.order, "invariant_factors": list(G.invariant_factors),
            "generators": [ser_vector(g) for g in G.generators()], "subgroup": ser_subgroup(G)}


def analyze(spec):
    pb = Problem(spec)
    p, st = pb.p, pb.strata
    Gf = symmetry_group(p)
    strata = []
    for J in sorted(st.chi_V, key=lambda J: (len(J), J)):
        if not J:
            continue
        row = {"J": ser_J(J), "chi_V": st.chi_V[J], "prov_V": st.prov_V[J],
               "chi_Y": st.chi_Y[J], "prov_Y": st.prov_Y[J],
               "isotropy_G": ser_subgroup(_coordinate_kernel(pb.G, J)),
               "isotropy_Gbar": ser_subgroup(pb.Gbar.isotropy(J))}
        if J in st.chi_V_polytope:
            row["chi_V_polytope"] = st.chi_V_polytope[J]
        strata.append(row)
    oracle = milnor_algebra_oracle(p)
    isolated = oracle is not NOT_ISOLATED
    return pb, {
        "polynomial": str(p),
        "weights": {"q": list(pb.w.q), "d": pb.w.d},
        "groups": {"choice": spec.group, "G_f": _group_info(Gf), "G": _group_info(pb.G),
                   "h": ser_vector(pb.h), "h_order": pb.h.order},
        "strata": {"table": strata, "euler_characteristic": st.euler_characteristic(),
                   "isolated": isolated,
                   "milnor_number": format_rational(milnor_number(p)) if isolated else None,
                   "milnor_number_oracle": oracle if isolated else None,
                   "route_disagreements": [ser_J(J) for J in st.route_disagreements()]},
    }


def _coordinate_kernel(G, J):
    from .torsion_lattice import coordinate_kernel

    return coordinate_kernel(G, J)


def verify(spec):
    pb, report = analyze(spec)
    st, space, D = pb.strata, pb.space, spec.truncation
    LP = log_poincare(pb.p, space)
    counted = poincare_counted(pb.p, space, D)
    closed_ok = counted == expand(poincare_closed(pb.p, space), space, D)
    log_D = max(D, pb.w.d)
    log_ok = dict(log_map(poincare_counted(pb.p, space, log_D)).coeffs) == dict(LP)
    report["poincare"] = {
        "truncation": D,
        "counted": ser_series(counted.coeffs),
        "closed_form": {"numerator": [ser_character(space.alpha_f(pb.p))],
                        "denominator": [ser_character(space.alpha_x(i)) for i in range(pb.p.n)]},
        "closed_matches_counted": closed_ok,
        "log": ser_series(LP),
        "log_matches_counted": log_ok,
        "log_truncation": log_D,
    }
    lhs = tau(LP) - pb.orbit()
    error = None
    try:
        zeta = pb.zeta()
    except NonIntegralCoefficient as exc:
        zeta, error = None, str(exc)
    report["orbit"] = {"element": ser_element(pb.orbit())}
    if zeta is None:
        report["zeta"] = {"error": error}
        report["verification"] = {"lhs": ser_element(lhs), "rhs": None, "residual": None,
                                  "ok": False, "secondary_ok": False, "error": error,
                                  "independent": st.independent,
                                  "provenance": _provenance(st)}
        return pb, report
    reduced = zeta - BurnsideElement.one(pb.G)
    rhs = ind_ext(reduced, pb.Gbar)
    residual = lhs - rhs
    report["zeta"] = {"element": ser_element(zeta), "reduced": ser_element(reduced)}
    report["verification"] = {
        "lhs": ser_element(lhs),
        "rhs": ser_element(rhs),
        "residual": ser_element(residual),
        "ok": residual.is_zero(),
        "secondary_ok": red(lhs) == reduced,
        "independent": st.independent,
        "provenance": _provenance(st),
    }
    return pb, report


def _provenance(st):
    counts = {}
    for side, prov in (("chi_V", st.prov_V), ("chi_Y", st.prov_Y)):
        for tag in prov.values():
            key = f"{side}:{tag}"
            counts[key] = counts.get(key, 0) + 1
    return counts


# --- classical diagnostic --------------------------------------------------------


def orbit_function(Or, sign=None):
    """Or_X(t) = prod_m (1 - t^m)^(sign * chi_m) over the classes [C*/mu_m]."""
    sign = ORBIT_EXPONENT_SIGN if sign is None else sign
    exps = {}
    for H, c in Or.coeffs.items():
        exps[H.order] = exps.get(H.order, 0) + sign * c
    return CyclotomicFunction.from_exponents(exps)


def _series_mul(a, b):
    D = len(a) - 1
    return [sum(a[i] * b[j - i] for i in range(j + 1)) for j in range(D + 1)]


def classical(spec, sign=None):
    if spec.group == "monodromy-cyclic":
        pb, report = verify(spec)
    else:
        pb = Problem(spec)
        if pb.G != cyclic(pb.h):
            raise UnsupportedGroup("classical invariants need the group <h> (monodromy-cyclic)")
        pb, report = verify(spec)
    D = spec.truncation
    p, w = pb.p, pb.w
    zeta = to_cyclotomic(pb.zeta())
    zeta_red = zeta.reduced()
    dual = zeta_red.saito_dual(w.d)
    Or_t = orbit_function(pb.orbit(), sign)
    P_t = poincare_counted(p, pb.space, D).specialize()
    P_closed = CyclotomicFunction.from_exponents({w.d: 1}) / CyclotomicFunction.from_exponents(
        _count(w.q))
    lhs = _series_mul(P_t, Or_t.series(D))
    residual = [a - b for a, b in zip(lhs, dual.series(D))]
    s_raw = _raw_exponents(pb)
    report["classical"] = {
        "poincare_series": P_t,
        "poincare_closed": ser_cyclotomic(P_closed),
        "zeta": ser_cyclotomic(zeta),
        "zeta_reduced": ser_cyclotomic(zeta_red),
        "saito_dual": ser_cyclotomic(dual),
        "orbit_function": ser_cyclotomic(Or_t),
        "orbit_sign": ORBIT_EXPONENT_SIGN if sign is None else sign,
        "ini_residual": residual,
        "ini_ok": not any(residual),
        "degree_sum": zeta.degree_sum(),
        "euler_characteristic": pb.strata.euler_characteristic(),
        "milnor_number": report["strata"]["milnor_number"],
        "s_raw": {str(m): format_rational(v) for m, v in sorted(s_raw.items())},
        "s_integral": all(v.denominator == 1 for v in s_raw.values()),
    }
    return pb, report


def _raw_exponents(pb):
    """s_m = chi(V_f^(Z_{d/m}))/m straight from the strata, as rationals."""
    from .torsion_lattice import coordinate_kernel

    d = pb.G.order
    chi = {}
    for J, v in pb.strata.chi_V.items():
        if J and v:
            m = d // coordinate_kernel(pb.G, J).order
            chi[m] = chi.get(m, 0) + v
    return {m: Fraction(v, m) for m, v in chi.items() if v}


def _count(q):
    out = {}
    for x in q:
        out[x] = out.get(x, 0) + 1
    return out


def calibrate_orbit_sign(specs):
    """The exponent sign for Or_X(t) making the classical relation hold on every spec."""
    good = []
    for sign in (1, -1):
        if all(classical(s, sign)[1]["classical"]["ini_ok"] for s in specs):
            good.append(sign)
    if len(good) != 1:
        raise ValueError(f"calibration is not conclusive: {good}")
    return good[0]
