"""Secure linear network codes on single-source multicast DAGs over prime fields.

The package builds, transforms, and verifies linear network codes whose
source-side mixing matrix Q hides the message from wiretappers observing
bounded edge sets.  Construction and verification are fully deterministic so
identical inputs always yield byte-identical outputs.
"""

from slnc.gf import Field
from slnc.network import Network, parse_network
from slnc.lnc import LinearNetworkCode, SecureCodeSpec, parse_code

__all__ = [
    "Field",
    "Network",
    "parse_network",
    "LinearNetworkCode",
    "SecureCodeSpec",
    "parse_code",
]
