"""Named criterion instances and the declarative config format.

Presets
-------
``bo-euler-example21``   p(n) with the Lehmer-type envelope, g(b) = pi/12 sqrt(24b-1) - 1/24, h = 2
``bo-planepartition``    pp(n) with the calibrated Wright envelope, g = gamma/3 b^{2/3}, h = 2 beta + 1
``bo-mary``              b_m(n) with constant Mahler forms; ``constants="fixed"`` uses 1/2, 2 and h = 4,
                         ``"calibrated"`` (default) fits constants on a window
``lc-chen``              p(n) with the Chen-Jia-Wang envelope and the closing estimate as side check

Config files
------------
INI syntax, one section per object::

    [wright]
    alpha = 0.2315168134488983705604
    beta = 0.43
    gamma = 2.009445660877013753065
    N = 1

    [envelope:mine]
    f = pi/6*sqrt(24*n - 1)
    c1 = sqrt(3)/(12*n)*(1 - 1/sqrt(n))
    c2 = sqrt(3)/(12*n)*(1 + 1/sqrt(n))
    N0 = 1
    param.k = 3/2

    [criterion:custom]
    type = bo
    sequence = euler
    envelope = mine
    g = pi/12*sqrt(24*n - 1) - 1/24
    h = 2
    N1 = 1
    N2 = 9
    N3 = 15
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass
from decimal import ROUND_CEILING
from fractions import Fraction
from typing import Optional, Union

from .criteria import BOCriterionInputs, LCCriterionInputs
from .envelopes import (
    CHEN,
    DEFAULT_WRIGHT,
    LEHMER,
    BoundEnvelope,
    MahlerParams,
    WrightParams,
    calibrate_mahler,
    mahler_envelope_def,
    wright_envelope_def,
)
from .errors import InvalidSpec
from .expr import IndexMap
from .intervals import _to_decimal
from .seq_core import SequenceSpec

PRESET_IDS = ("bo-euler-example21", "bo-planepartition", "bo-mary", "lc-chen")

Inputs = Union[BOCriterionInputs, LCCriterionInputs]


@dataclass
class CriterionInstance:
    name: str
    kind: str  # "bo" or "lc"
    inputs: Inputs
    sequence: SequenceSpec
    horizon: Optional[int] = None


def bo_euler_example21() -> CriterionInstance:
    inputs = BOCriterionInputs(
        env=LEHMER,
        g=IndexMap.from_expr("pi/12*sqrt(24*n - 1) - 1/24", label="g"),
        h=IndexMap.constant("2", label="h"),
        N1=1,
        N2=9,
        N3=15,
        label="bo-euler-example21",
    )
    return CriterionInstance("bo-euler-example21", "bo", inputs, SequenceSpec.euler())


def bo_planepartition(params: WrightParams = DEFAULT_WRIGHT) -> CriterionInstance:
    env = wright_envelope_def(params)
    beta = Fraction(params.beta)
    n2 = max(params.N, math.ceil((beta + 1) ** 2))
    p = params.as_params()
    inputs = BOCriterionInputs(
        env=env,
        g=IndexMap.from_expr("gamma/3*n**(2/3)", p, label="g"),
        h=IndexMap.from_expr("2*beta + 1", p, label="h"),
        N1=params.N,
        N2=n2,
        N3=None,
        label="bo-planepartition",
        meta={"wright": params},
    )
    return CriterionInstance("bo-planepartition", "bo", inputs, SequenceSpec.plane())


_MARY_G = "1/(2*log(m))*((log(n) - 2*log(2))*log(n) - 3/2)"


def bo_mary(m: int = 2, horizon: int = 2000, constants: str = "calibrated",
            window_start: Optional[int] = None) -> CriterionInstance:
    """b_m instance.

    ``constants="fixed"`` uses c1 = 1/2, c2 = 2, h = 4.  These cannot hold for
    large n because b_m(n) e^{-f(n)} tends to 0, so the default fits
    constants on [window_start, 2*horizon] and takes h just above c2/c1.
    """
    mp = {"m": str(m)}
    g = IndexMap.from_expr(_MARY_G, mp, label="g")
    if constants == "fixed":
        params = MahlerParams(m, "1/2", "2")
        env = mahler_envelope_def(params, N0=1)
        h = IndexMap.constant("4", label="h")
        n2 = None
    elif constants == "calibrated":
        w = window_start if window_start is not None else max(1, horizon // 2)
        params = calibrate_mahler(m, w, 2 * horizon)
        env = mahler_envelope_def(params, N0=w)
        ratio = Fraction(params.c2) / Fraction(params.c1)
        h_text = _to_decimal(ratio * (1 + Fraction(1, 10**6)), 8, ROUND_CEILING)
        h = IndexMap.constant(h_text, label="h")
        n2 = w
    else:
        raise InvalidSpec(f"unknown constants mode {constants!r}")
    n1 = _first_positive(g, horizon)
    inputs = BOCriterionInputs(env=env, g=g, h=h, N1=n1, N2=n2, N3=None,
                               label=f"bo-mary-{m}", meta={"mahler": params, "constants": constants})
    return CriterionInstance("bo-mary", "bo", inputs, SequenceSpec.mary(m))


def _first_positive(m: IndexMap, horizon: int) -> int:
    """Least n such that m is certifiably positive on [n, horizon]."""
    n = horizon
    while n >= 1 and m.at(n).lo_exact > 0:
        n -= 1
    if n == horizon:
        raise InvalidSpec(f"{m.label} is not positive at the horizon {horizon}")
    return n + 1


_CHEN_H = "sqrt(24)*pi/6*(1/4*n**(-3/2) - 55588/13824*n**(-5/2))"
_CHEN_CLOSING_RHS = "(1 + 24**2/((24*n - 1)**2 - 24**2))**(5/2)*(1 + 24*sqrt(6)/(7*pi**3)*n**(-3/2))"


def lc_chen() -> CriterionInstance:
    h = IndexMap.from_expr(_CHEN_H, label="h")
    lhs = IndexMap.from_expr(f"1 + {_CHEN_H}", label="closing.lhs")
    rhs = IndexMap.from_expr(_CHEN_CLOSING_RHS, label="closing.rhs")
    inputs = LCCriterionInputs(env=CHEN, h=h, N1=94, N2=94, side=("closing", lhs, rhs, 94), label="lc-chen")
    return CriterionInstance("lc-chen", "lc", inputs, SequenceSpec.euler())


def preset(name: str, **kwargs) -> CriterionInstance:
    builders = {
        "bo-euler-example21": bo_euler_example21,
        "bo-planepartition": bo_planepartition,
        "bo-mary": bo_mary,
        "lc-chen": lc_chen,
    }
    try:
        builder = builders[name]
    except KeyError:
        raise InvalidSpec(f"unknown preset {name!r}; known: {', '.join(PRESET_IDS)}") from None
    return builder(**kwargs)


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------


@dataclass
class Config:
    envelopes: dict[str, BoundEnvelope]
    criteria: dict[str, CriterionInstance]
    wright: WrightParams
    mahler: Optional[MahlerParams]


def _int_or_none(section, key: str) -> Optional[int]:
    raw = section.get(key)
    if raw is None or raw.strip().lower() in ("", "none", "discover"):
        return None
    return int(raw)


def load_config(source: str, is_text: bool = False) -> Config:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str  # keep parameter names case-sensitive
    if is_text:
        cp.read_string(source)
    else:
        with open(source) as fh:
            cp.read_file(fh)

    wright = DEFAULT_WRIGHT
    if cp.has_section("wright"):
        s = cp["wright"]
        wright = WrightParams(s.get("alpha", DEFAULT_WRIGHT.alpha), s.get("beta", DEFAULT_WRIGHT.beta),
                              s.get("gamma", DEFAULT_WRIGHT.gamma), int(s.get("N", DEFAULT_WRIGHT.N)))
    mahler = None
    if cp.has_section("mahler"):
        s = cp["mahler"]
        mahler = MahlerParams(int(s["m"]), s.get("c1", "1/2"), s.get("c2", "2"))

    envelopes: dict[str, BoundEnvelope] = {
        "lehmer": LEHMER,
        "chen": CHEN,
        "wright": wright_envelope_def(wright),
    }
    if mahler is not None:
        envelopes["mahler"] = mahler_envelope_def(mahler, int(cp["mahler"].get("N0", 1)))

    for sec in cp.sections():
        if not sec.startswith("envelope:"):
            continue
        s = cp[sec]
        name = sec.split(":", 1)[1]
        params = {k[len("param."):]: v for k, v in s.items() if k.startswith("param.")}
        try:
            envelopes[name] = BoundEnvelope.from_exprs(name, s["f"], s["c1"], s["c2"],
                                                       int(s.get("N0", 1)), params)
        except KeyError as exc:
            raise InvalidSpec(f"[{sec}] is missing {exc.args[0]!r}") from None

    criteria: dict[str, CriterionInstance] = {}
    for sec in cp.sections():
        if not sec.startswith("criterion:"):
            continue
        s = cp[sec]
        name = sec.split(":", 1)[1]
        env_name = s.get("envelope")
        if env_name not in envelopes:
            raise InvalidSpec(f"[{sec}] refers to unknown envelope {env_name!r}")
        env = envelopes[env_name]
        params = dict(env.meta.get("params", {}))
        params.update({k[len("param."):]: v for k, v in s.items() if k.startswith("param.")})
        seq = SequenceSpec.parse(s.get("sequence", "euler"))
        horizon = int(s["horizon"]) if "horizon" in s else None
        kind = s.get("type", "bo")
        if kind == "bo":
            inputs = BOCriterionInputs(
                env=env,
                g=IndexMap.from_expr(s["g"], params, label="g"),
                h=IndexMap.from_expr(s["h"], params, label="h"),
                N1=_int_or_none(s, "N1"), N2=_int_or_none(s, "N2"), N3=_int_or_none(s, "N3"),
                label=name,
            )
        elif kind == "lc":
            side = None
            if "side.lhs" in s:
                side = (s.get("side.name", "side"),
                        IndexMap.from_expr(s["side.lhs"], params, label="side.lhs"),
                        IndexMap.from_expr(s["side.rhs"], params, label="side.rhs"),
                        _int_or_none(s, "side.N"))
            inputs = LCCriterionInputs(
                env=env,
                h=IndexMap.from_expr(s["h"], params, label="h"),
                N1=_int_or_none(s, "N1"), N2=_int_or_none(s, "N2"),
                side=side, label=name,
            )
        else:
            raise InvalidSpec(f"[{sec}] has unknown type {kind!r}")
        criteria[name] = CriterionInstance(name, kind, inputs, seq, horizon)
    return Config(envelopes, criteria, wright, mahler)
