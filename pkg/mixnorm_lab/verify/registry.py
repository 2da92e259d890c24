"""
Registry of every probe by name.

If you've added a new probe, add its class to its family's list in the
family ``assets.py``; the registry picks it up from there.
"""

from __future__ import annotations

from mixnorm_lab.models import ProbeKind

from .base import BaseProbe
from .probes.convolution.assets import CONVOLUTION_PROBES
from .probes.duality.assets import DUALITY_PROBES
from .probes.embeddings.assets import EMBEDDING_PROBES
from .probes.integrals.assets import INTEGRAL_PROBES
from .probes.martingale.assets import MARTINGALE_PROBES
from .probes.maximal.assets import MAXIMAL_PROBES

FAMILIES: dict[str, list[type[BaseProbe]]] = {
    "embeddings": EMBEDDING_PROBES,
    "convolution": CONVOLUTION_PROBES,
    "martingale": MARTINGALE_PROBES,
    "maximal": MAXIMAL_PROBES,
    "integrals": INTEGRAL_PROBES,
    "duality": DUALITY_PROBES,
}

PROBES: dict[str, type[BaseProbe]] = {
    cls.PROBE_NAME: cls for classes in FAMILIES.values() for cls in classes
}

EXACT_PROBES = tuple(
    name for name, cls in PROBES.items() if cls.KIND is ProbeKind.EXACT
)
EMPIRICAL_PROBES = tuple(
    name for name, cls in PROBES.items() if cls.KIND is ProbeKind.EMPIRICAL
)


def get_probe(name: str) -> type[BaseProbe]:
    """Look up a probe class, raising ValueError for unknown names."""
    try:
        return PROBES[name]
    except KeyError:
        raise ValueError(
            f"unknown probe {name!r}; known probes: {', '.join(sorted(PROBES))}"
        ) from None
