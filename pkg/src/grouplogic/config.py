"""Size caps shared across modules.

Every cap can be overridden per call; ``CAPS`` holds the process defaults
(the CLI global flags write into it).
"""

from dataclasses import dataclass


@dataclass
class Caps:
    table: int = 5000
    elements: int = 1_000_000
    lattice: int = 200
    sigma: int = 200
    work_budget: int = 10**9
    isomorphism: int = 200
    sl2_q: int = 32


CAPS = Caps()
