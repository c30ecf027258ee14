"""Constants of the multinomial Mittag-Leffler estimate.

For 0 < mu_1 < ... < mu_n and gamma > 0,

    |E_{(mu),gamma}(z)| <= C * E_{mu_1,gamma}(|z_1| + ... + |z_n|).

Two versions of C are produced. ``c_paper`` is 1 + Gamma(gamma + mu_1 n0) /
Gamma(gamma), the closed form as usually quoted. ``c_safe`` is 1 + c0_safe
with c0_safe = max_{k <= n0} Gamma(gamma + mu_1 k) / Gamma(x0): since Gamma(x0)
is the global minimum of Gamma on (0, inf), this constant dominates every
ratio Gamma(gamma + mu_1 k) / Gamma(gamma + sum mu_i l_i) with k <= n0, and for
k > n0 all arguments sit on the increasing branch of Gamma. Only ``c_safe`` is
used for tail certificates.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING

from ._backend import kernels
from .gamma import gamma_minimum

if TYPE_CHECKING:
    from .multinomial import MultiMLParams


@dataclass(frozen=True)
class EstimateConstants:
    x0: float
    gamma_x0: float
    n0: int
    c0_paper: float
    c_paper: float
    c0_safe: float
    c_safe: float

    def to_dict(self) -> dict:
        return asdict(self)


def compute_n0(p: MultiMLParams) -> int:
    """Largest n0 with mu_1 n0 <= x0 - gamma; 0 once gamma >= x0."""
    p.require_ascending()
    x0 = gamma_minimum().x0
    g = p.gamma_param
    if g >= x0:
        return 0
    return int(math.floor((x0 - g) / p.mus[0]))


def compute_constants(p: MultiMLParams) -> EstimateConstants:
    p.require_ascending()
    gm = gamma_minimum()
    n0 = compute_n0(p)
    g, mu1 = p.gamma_param, p.mus[0]
    lg = kernels.lgamma

    c0_paper = math.exp(lg(g + mu1 * n0) - lg(g))
    lg_x0 = lg(gm.x0)
    c0_safe = max(math.exp(lg(g + mu1 * k) - lg_x0) for k in range(n0 + 1))
    return EstimateConstants(
        x0=gm.x0,
        gamma_x0=gm.gamma_x0,
        n0=n0,
        c0_paper=c0_paper,
        c_paper=1.0 + c0_paper,
        c0_safe=c0_safe,
        c_safe=1.0 + c0_safe,
    )
