"""Exact computations in endomorphism rings of finite abelian p-groups."""

__version__ = "0.1.0"

from .endo import (  # noqa: E402
    Endo,
    alpha_mn,
    compose,
    endo_validate,
    enumerate_endos,
    image,
    is_invertible,
    kernel,
    projection,
    psi_embed,
)
from .groups import GroupElement, PGroup, Subgroup, is_essential, multiple_subgroup, socle, span  # noqa: E402
from .radical import (  # noqa: E402
    nilpotency_index,
    quasi_inverse,
    radical_membership,
    radical_oracle,
    semisimple_quotient,
)

__all__ = [
    "Endo",
    "GroupElement",
    "PGroup",
    "Subgroup",
    "alpha_mn",
    "compose",
    "endo_validate",
    "enumerate_endos",
    "image",
    "is_essential",
    "is_invertible",
    "kernel",
    "multiple_subgroup",
    "nilpotency_index",
    "projection",
    "psi_embed",
    "quasi_inverse",
    "radical_membership",
    "radical_oracle",
    "semisimple_quotient",
    "socle",
    "span",
]
