"""Singular transform data and the asymptotic expansions it transfers to.

A SingularPart records the closed-form singular behaviour of a Laplace
transform F(s) on the closed right half plane near Re s = 0:

    a / s^2                               linear drift
    b_n / (s - i t_n)                     simple boundary poles
    (c_n + d_n log^k_n(1/s)) / s^(b_n+1)  power-log data at s = 0,
                                          0 <= b_n < 1
    r_0/(s-a), r_n e^(i theta_n)/(s-a-i t_n) + conj   data on Re s = a > 0
                                          (the "wi" block)

transfer_expansion maps the boundary-line data to the time-domain
expansion it forces when the remainder transform has local
pseudofunction (o(1)) or pseudomeasure (O(1)) boundary behaviour:

    a/s^2                 ->  a x
    b/(s - i t)           ->  b e^(i t x)
    (c + d log^k(1/s)) / s^(b+1)
        ->  x^b [ c/Gamma(b+1)
                  + d sum_{j=0..k} C(k,j) D_j(b+1) log^(k-j) x ]

where D_j is the j-th derivative of 1/Gamma (specfun).  laplace_of_term
inverts the map term by term, modulo an entire (regular) correction for
the log shapes.

Shapes outside this list do not transfer.  Negative-power terms and a
bare c/s under an O(1) remainder are absorbed by the remainder; second
order poles off the origin (the double_poles extension slot) force
unbounded oscillation and are reported, never expanded.  Dropped items
are recorded as human-readable strings on the expansion so report
front-ends can surface them.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .specfun import gamma, recip_gamma_derivs

__all__ = [
    "Remainder",
    "AsymptoticTerm",
    "AsymptoticExpansion",
    "SingularPart",
    "TransformFragment",
    "transfer_expansion",
    "wiener_ikehara_mainterm",
    "laplace_of_term",
    "eval_expansion",
    "singular_part_to_json",
    "singular_part_from_json",
    "expansion_to_json",
]

_COEFF_EPS = 0.0  # exact zero test; zero inputs must vanish, not round


class Remainder(str, enum.Enum):
    """Remainder class of an expansion: o(1) or O(1) as x -> infinity."""

    LITTLE_O1 = "LittleO1"
    BIG_O1 = "BigO1"


@dataclass(frozen=True)
class AsymptoticTerm:
    """One term coeff * x^beta * log^logpow(x) * e^(i freq x) * e^(rate x)."""

    coeff: complex
    beta: float = 0.0
    logpow: int = 0
    freq: float = 0.0
    rate: float = 0.0

    def sort_key(self) -> tuple:
        return (-self.rate, -self.beta, -self.logpow, self.freq)

    def shape_key(self) -> tuple:
        return (self.rate, self.beta, self.logpow, self.freq)


def _merge_terms(terms: list[AsymptoticTerm]) -> tuple[AsymptoticTerm, ...]:
    acc: dict[tuple, complex] = {}
    for t in terms:
        acc[t.shape_key()] = acc.get(t.shape_key(), 0.0) + complex(t.coeff)
    out = [
        AsymptoticTerm(coeff=c, rate=k[0], beta=k[1], logpow=k[2], freq=k[3])
        for k, c in acc.items()
        if abs(c) > _COEFF_EPS
    ]
    out.sort(key=AsymptoticTerm.sort_key)
    return tuple(out)


@dataclass(frozen=True)
class AsymptoticExpansion:
    """Sum of AsymptoticTerms plus a remainder class.

    terms are kept sorted by (rate, beta, logpow) descending with
    frequency as the tie-break, and equal shapes are coefficient-merged,
    so structurally equal expansions compare equal.  dropped lists the
    descriptions of any input data that does not transfer; when it is
    nonempty the stated remainder applies to the retained part only.
    """

    terms: tuple[AsymptoticTerm, ...]
    remainder: Remainder
    dropped: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", _merge_terms(list(self.terms)))

    def evaluate(self, x, log_plus: bool = False):
        return eval_expansion(self, x, log_plus=log_plus)


@dataclass(frozen=True)
class SingularPart:
    """Closed-form singular data of a transform near the imaginary axis.

    powerlog_terms entries are (c, d, beta, k) for
    (c + d log^k(1/s)) / s^(beta+1) with beta < 1 and k >= 1.  Negative
    beta is tolerated at construction and flagged when transferring.
    double_poles entries are (b, t) for b/(s - i t)^2 with t != 0.
    The wi block carries first-order data on the line Re s = wi_alpha:
    wi_r0 at t = 0 and amplitude/phase/frequency triples (r, theta, t),
    t > 0, for the conjugate pair at a +- i t.
    """

    linear_pole_a: complex = 0.0
    simple_poles: tuple[tuple[complex, float], ...] = ()
    powerlog_terms: tuple[tuple[complex, complex, float, int], ...] = ()
    double_poles: tuple[tuple[complex, float], ...] = ()
    wi_alpha: float | None = None
    wi_r0: float = 0.0
    wi_pairs: tuple[tuple[float, float, float], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "simple_poles", tuple((complex(b), float(t)) for b, t in self.simple_poles)
        )
        object.__setattr__(
            self,
            "powerlog_terms",
            tuple(
                (complex(c), complex(d), float(beta), int(k))
                for c, d, beta, k in self.powerlog_terms
            ),
        )
        object.__setattr__(
            self, "double_poles", tuple((complex(b), float(t)) for b, t in self.double_poles)
        )
        object.__setattr__(
            self,
            "wi_pairs",
            tuple((float(r), float(th), float(t)) for r, th, t in self.wi_pairs),
        )
        object.__setattr__(self, "linear_pole_a", complex(self.linear_pole_a))
        self.validate()

    def validate(self) -> None:
        ts = [t for _, t in self.simple_poles]
        if len(set(ts)) != len(ts):
            raise ValueError("simple pole frequencies must be distinct")
        for _, _, beta, k in self.powerlog_terms:
            if beta >= 1.0:
                raise ValueError(f"power-log exponent beta = {beta} must be < 1")
            if k < 1:
                raise ValueError(f"log power k = {k} must be >= 1")
        for _, t in self.double_poles:
            if t == 0.0:
                raise ValueError("double pole at the origin is not representable here")
        if self.wi_alpha is not None:
            if not self.wi_alpha > 0.0:
                raise ValueError(f"wi_alpha must be positive, got {self.wi_alpha}")
            wts = [t for _, _, t in self.wi_pairs]
            if any(t <= 0.0 for t in wts):
                raise ValueError("wi pair frequencies must be positive")
            if len(set(wts)) != len(wts):
                raise ValueError("wi pair frequencies must be distinct")
        elif self.wi_r0 != 0.0 or self.wi_pairs:
            raise ValueError("wi_r0 / wi_pairs require wi_alpha to be set")

    # ------------------------------------------------------------------
    # closed-form evaluation
    # ------------------------------------------------------------------
    def transform_value(self, s: complex) -> complex:
        """Sum of all singular shapes at the point s (not a pole of any)."""
        s = complex(s)
        val = 0.0 + 0.0j
        if self.linear_pole_a != 0.0:
            val += self.linear_pole_a / (s * s)
        for b, t in self.simple_poles:
            val += b / (s - 1j * t)
        for c, d, beta, k in self.powerlog_terms:
            term = c
            if d != 0.0:
                term = term + d * (-cmath.log(s)) ** k
            val += term * s ** (-(beta + 1.0))
        for b, t in self.double_poles:
            val += b / (s - 1j * t) ** 2
        if self.wi_alpha is not None:
            a = self.wi_alpha
            val += self.wi_r0 / (s - a)
            for r, th, t in self.wi_pairs:
                val += r * cmath.exp(1j * th) / (s - a - 1j * t)
                val += r * cmath.exp(-1j * th) / (s - a + 1j * t)
        return val

    def merged_with(self, other: "SingularPart") -> "SingularPart":
        """Coefficient-wise union of two singular parts (wi blocks must not clash)."""
        if self.wi_alpha is not None and other.wi_alpha is not None:
            if self.wi_alpha != other.wi_alpha:
                raise ValueError("cannot merge singular parts with different wi_alpha")
        poles: dict[float, complex] = {}
        for b, t in self.simple_poles + other.simple_poles:
            poles[t] = poles.get(t, 0.0) + b
        dpoles: dict[float, complex] = {}
        for b, t in self.double_poles + other.double_poles:
            dpoles[t] = dpoles.get(t, 0.0) + b
        plog: dict[tuple[float, int], list[complex]] = {}
        for c, d, beta, k in self.powerlog_terms + other.powerlog_terms:
            cd = plog.setdefault((beta, k), [0.0, 0.0])
            cd[0] += c
            cd[1] += d
        alpha = self.wi_alpha if self.wi_alpha is not None else other.wi_alpha
        pairs: dict[float, tuple[float, float, float]] = {}
        for r, th, t in self.wi_pairs + other.wi_pairs:
            if t in pairs:
                raise ValueError("cannot merge coincident wi pair frequencies")
            pairs[t] = (r, th, t)
        return SingularPart(
            linear_pole_a=self.linear_pole_a + other.linear_pole_a,
            simple_poles=tuple(
                (b, t) for t, b in sorted(poles.items()) if b != 0.0
            ),
            powerlog_terms=tuple(
                (cd[0], cd[1], beta, k)
                for (beta, k), cd in sorted(plog.items())
                if cd[0] != 0.0 or cd[1] != 0.0
            ),
            double_poles=tuple((b, t) for t, b in sorted(dpoles.items()) if b != 0.0),
            wi_alpha=alpha,
            wi_r0=self.wi_r0 + other.wi_r0,
            wi_pairs=tuple(sorted(pairs.values(), key=lambda p: p[2])),
        )


@dataclass(frozen=True)
class TransformFragment:
    """Result of laplace_of_term: singular data plus an exactness flag.

    modulo_entire is True when the transform identity only holds up to
    an entire correction (the truncated-logarithm shapes), False when
    the correspondence is exact.
    """

    part: SingularPart
    modulo_entire: bool


# ----------------------------------------------------------------------
# transfer map
# ----------------------------------------------------------------------

def transfer_expansion(sp: SingularPart, remainder: Remainder = Remainder.LITTLE_O1) -> AsymptoticExpansion:
    """Time-domain expansion forced by the boundary singular data.

    Only the admitted shapes produce terms; everything else lands in
    `dropped` with a description.  Under an O(1) remainder a bare c/s
    contributes nothing beyond the remainder and is dropped as well.
    """
    remainder = Remainder(remainder)
    terms: list[AsymptoticTerm] = []
    dropped: list[str] = []
    if sp.linear_pole_a != 0.0:
        terms.append(AsymptoticTerm(coeff=sp.linear_pole_a, beta=1.0))
    for b, t in sp.simple_poles:
        if b != 0.0:
            terms.append(AsymptoticTerm(coeff=b, freq=t))
    for c, d, beta, k in sp.powerlog_terms:
        if c == 0.0 and d == 0.0:
            continue
        if beta < 0.0:
            dropped.append(
                f"power-log term with beta = {beta}: decaying scale, no main-term contribution"
            )
            continue
        if remainder is Remainder.BIG_O1 and beta == 0.0 and d == 0.0:
            dropped.append(
                f"constant term {_fmt_complex(c)}/s: absorbed by the O(1) remainder"
            )
            continue
        if d == 0.0:
            terms.append(AsymptoticTerm(coeff=c / gamma(beta + 1.0), beta=beta))
            continue
        derivs = recip_gamma_derivs(beta + 1.0, k).values
        for j in range(k + 1):
            coeff = d * math.comb(k, j) * derivs[j]
            if j == k:
                coeff = coeff + c * derivs[0]
            terms.append(AsymptoticTerm(coeff=coeff, beta=beta, logpow=k - j))
    for b, t in sp.double_poles:
        if b != 0.0:
            dropped.append(
                f"double pole {_fmt_complex(b)}/(s - {t}i)^2: non-transfer singular data "
                f"(forces the unbounded oscillation {_fmt_complex(b)} x e^({t}ix))"
            )
    if sp.wi_alpha is not None:
        dropped.append(
            "wi block (data on Re s = alpha > 0): use wiener_ikehara_mainterm"
        )
    return AsymptoticExpansion(terms=tuple(terms), remainder=remainder, dropped=tuple(dropped))


def wiener_ikehara_mainterm(sp: SingularPart) -> AsymptoticExpansion:
    """Main term of S(x) forced by first-order data on Re s = alpha.

    Returns terms all carrying rate = alpha:

        e^(ax) [ r0/a + sum_n 2 r_n cos(t_n x + theta_n - arctan(t_n/a))
                              / sqrt(a^2 + t_n^2) ]

    encoded as conjugate frequency pairs.  The remainder class refers to
    the alpha-normalized residual e^(-ax) S(x) - (terms e^(-ax)).
    """
    if sp.wi_alpha is None:
        raise ValueError("singular part carries no wi block")
    a = sp.wi_alpha
    terms = [AsymptoticTerm(coeff=sp.wi_r0 / a, rate=a)]
    for r, th, t in sp.wi_pairs:
        amp = r / math.hypot(a, t)
        phase = th - math.atan2(t, a)
        terms.append(AsymptoticTerm(coeff=amp * cmath.exp(1j * phase), freq=t, rate=a))
        terms.append(AsymptoticTerm(coeff=amp * cmath.exp(-1j * phase), freq=-t, rate=a))
    return AsymptoticExpansion(terms=tuple(terms), remainder=Remainder.LITTLE_O1)


def _log_monomial_in_basis(beta: float, m: int) -> list[float]:
    """Coefficients e with x^beta log^m x = sum e[j] * B_j.

    B_j is the canonical time-domain shape whose transform is
    s^(-beta-1) log^j (1/s) modulo an entire part:

        B_j = x^beta sum_{i=0..j} C(j,i) D_i(beta+1) log^(j-i) x.

    The system is triangular with unit-free diagonal D_0 = 1/Gamma, so
    the inversion is a short downward recursion.
    """
    derivs = recip_gamma_derivs(beta + 1.0, m).values
    g = gamma(beta + 1.0)
    rep: list[list[float]] = [[g]]
    for mm in range(1, m + 1):
        e = [0.0] * (mm + 1)
        e[mm] = g
        for j in range(1, mm + 1):
            sub = rep[mm - j]
            w = math.comb(mm, j) * derivs[j] * g
            for i, ev in enumerate(sub):
                e[i] -= w * ev
        rep.append(e)
    return rep[m]


def laplace_of_term(term: AsymptoticTerm) -> TransformFragment:
    """Singular transform data generated by one admitted time-domain term.

    Exact pairs:   x       -> 1/s^2
                   e^(itx) -> 1/(s - it)
                   x^beta  -> Gamma(beta+1) / s^(beta+1)
    Modulo entire: x^beta log^m x -> combinations of
                   s^(-beta-1) log^j(1/s), j <= m.
    Raises ValueError for shapes outside the admitted list (nonzero
    rate, oscillation mixed with growth or logs).
    """
    if term.rate != 0.0:
        raise ValueError(f"unsupported term shape: nonzero rate {term.rate}")
    c = complex(term.coeff)
    if c == 0.0:
        return TransformFragment(SingularPart(), modulo_entire=False)
    if term.freq != 0.0:
        if term.beta != 0.0 or term.logpow != 0:
            raise ValueError(
                "unsupported term shape: oscillation may not carry powers or logs"
            )
        return TransformFragment(
            SingularPart(simple_poles=((c, term.freq),)), modulo_entire=False
        )
    if term.logpow == 0:
        if term.beta == 1.0:
            return TransformFragment(SingularPart(linear_pole_a=c), modulo_entire=False)
        if term.beta == 0.0:
            return TransformFragment(
                SingularPart(simple_poles=((c, 0.0),)), modulo_entire=False
            )
        if -1.0 < term.beta < 1.0:
            return TransformFragment(
                SingularPart(
                    powerlog_terms=((c * gamma(term.beta + 1.0), 0.0, term.beta, 1),)
                ),
                modulo_entire=False,
            )
        raise ValueError(f"unsupported term shape: beta = {term.beta}")
    if not (0.0 <= term.beta < 1.0):
        raise ValueError(
            f"unsupported term shape: log powers require 0 <= beta < 1, got {term.beta}"
        )
    e = _log_monomial_in_basis(term.beta, term.logpow)
    c_part = c * e[0]
    plog = []
    if c_part != 0.0 or any(c * ej != 0.0 for ej in e[1:]):
        first = True
        for j in range(1, len(e)):
            dj = c * e[j]
            if dj == 0.0:
                continue
            if first:
                plog.append((c_part, dj, term.beta, j))
                first = False
            else:
                plog.append((0.0, dj, term.beta, j))
        if first:  # no log fragments survived; park the constant alone
            plog.append((c_part, 0.0, term.beta, 1))
    return TransformFragment(
        SingularPart(powerlog_terms=tuple(plog)), modulo_entire=True
    )


def eval_expansion(expansion: AsymptoticExpansion, x, log_plus: bool = False):
    """Evaluate the expansion at x (scalar or array), x > 0.

    Terms with positive log powers need x > 1 unless log_plus is set, in
    which case log is replaced by its positive part (zero on x <= 1),
    matching the truncated-logarithm convention of the transfer map.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr < 0.0):
        raise ValueError("expansion evaluation requires x >= 0")
    has_logs = any(t.logpow > 0 for t in expansion.terms)
    if has_logs and not log_plus and np.any(arr <= 1.0):
        raise ValueError(
            "terms carry log powers: evaluation needs x > 1 (or log_plus=True)"
        )
    out = np.zeros(arr.shape, dtype=complex)
    logx = None
    if has_logs:
        with np.errstate(divide="ignore"):
            logx = np.where(arr > 0.0, np.log(np.maximum(arr, 1e-300)), 0.0)
        if log_plus:
            logx = np.maximum(logx, 0.0)
    for t in expansion.terms:
        piece = np.full(arr.shape, complex(t.coeff))
        if t.beta != 0.0:
            piece = piece * np.power(arr, t.beta)
        if t.logpow > 0:
            piece = piece * logx**t.logpow
        if t.freq != 0.0:
            piece = piece * np.exp(1j * t.freq * arr)
        if t.rate != 0.0:
            piece = piece * np.exp(t.rate * arr)
        out += piece
    return out[0] if scalar else out


# ----------------------------------------------------------------------
# JSON wire format
# ----------------------------------------------------------------------

def _fmt_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return repr(z.real)
    return f"({z.real!r}{z.imag:+}j)"


def _c_to_json(z: complex):
    z = complex(z)
    return z.real if z.imag == 0.0 else [z.real, z.imag]


def _c_from_json(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise ValueError(f"cannot read complex value from {v!r}")


def singular_part_to_json(sp: SingularPart) -> dict:
    """Plain-dict form with keys a / simple_poles / powerlog / wi.

    Complex coefficients appear as plain numbers when real, else as
    [re, im] pairs.  Empty blocks are omitted.
    """
    out: dict = {}
    if sp.linear_pole_a != 0.0:
        out["a"] = _c_to_json(sp.linear_pole_a)
    if sp.simple_poles:
        out["simple_poles"] = [
            {"b": _c_to_json(b), "t": t} for b, t in sp.simple_poles
        ]
    if sp.powerlog_terms:
        out["powerlog"] = [
            {"c": _c_to_json(c), "d": _c_to_json(d), "beta": beta, "k": k}
            for c, d, beta, k in sp.powerlog_terms
        ]
    if sp.double_poles:
        out["double_poles"] = [
            {"b": _c_to_json(b), "t": t} for b, t in sp.double_poles
        ]
    if sp.wi_alpha is not None:
        out["wi"] = {
            "alpha": sp.wi_alpha,
            "r0": sp.wi_r0,
            "pairs": [
                {"r": r, "theta": th, "t": t} for r, th, t in sp.wi_pairs
            ],
        }
    return out


def singular_part_from_json(data: dict) -> SingularPart:
    known = {"a", "simple_poles", "powerlog", "double_poles", "wi"}
    extra = set(data) - known
    if extra:
        raise ValueError(f"unknown singular-part keys: {sorted(extra)}")
    wi = data.get("wi") or {}
    return SingularPart(
        linear_pole_a=_c_from_json(data.get("a", 0.0)),
        simple_poles=tuple(
            (_c_from_json(p["b"]), float(p["t"])) for p in data.get("simple_poles", [])
        ),
        powerlog_terms=tuple(
            (
                _c_from_json(p.get("c", 0.0)),
                _c_from_json(p.get("d", 0.0)),
                float(p["beta"]),
                int(p.get("k", 1)),
            )
            for p in data.get("powerlog", [])
        ),
        double_poles=tuple(
            (_c_from_json(p["b"]), float(p["t"])) for p in data.get("double_poles", [])
        ),
        wi_alpha=float(wi["alpha"]) if wi else None,
        wi_r0=float(wi.get("r0", 0.0)) if wi else 0.0,
        wi_pairs=tuple(
            (float(p["r"]), float(p["theta"]), float(p["t"]))
            for p in wi.get("pairs", [])
        )
        if wi
        else (),
    )


def expansion_to_json(e: AsymptoticExpansion) -> dict:
    return {
        "terms": [
            {
                "coeff": _c_to_json(t.coeff),
                "beta": t.beta,
                "logpow": t.logpow,
                "freq": t.freq,
                "rate": t.rate,
            }
            for t in e.terms
        ],
        "remainder": e.remainder.value,
        "dropped": list(e.dropped),
    }
