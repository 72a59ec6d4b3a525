"""Size caps that gate expensive constructions and scans.

All potentially explosive operations (building multiplication tables,
enumerating submodule lattices, enumerating hom-sets, full associativity
scans) consult a Caps instance.  Deciders that would exceed a cap report
the affected property as "skipped" rather than silently computing a wrong
or partial answer.

Defaults can be overridden process-wide with the PIRICK_CAPS environment
variable (e.g. ``PIRICK_CAPS=lattice=128,hom=1048576``) or per-call by
passing an explicit Caps.
"""

from __future__ import annotations

import dataclasses
import os

from .errors import PirickError


@dataclasses.dataclass(frozen=True)
class Caps:
    """Limits for table constructions and exhaustive scans.

    construct:    largest ring/module order for which full tables are built.
    scan:         largest ring order for which associativity is checked on
                  all |R|^3 triples (above it: basis triples + random triples).
    lattice:      largest module order for which the submodule lattice is
                  enumerated.
    hom:          largest number of candidate generator-image assignments
                  enumerated when computing a hom-set.
    matrix_check: largest ring order for which matrix-ring constructions are
                  attempted inside verification entries.
    """

    construct: int = 4096
    scan: int = 64
    lattice: int = 64
    hom: int = 2 ** 24
    matrix_check: int = 256


_FIELDS = {f.name for f in dataclasses.fields(Caps)}


def caps_from_env(env=None):
    """Build the default Caps, honoring the PIRICK_CAPS environment variable.

    The variable holds comma-separated ``key=value`` pairs; unknown keys and
    malformed pairs raise PirickError so typos do not silently do nothing.
    """
    if env is None:
        env = os.environ
    raw = env.get("PIRICK_CAPS", "")
    values = {}
    if raw.strip():
        for part in raw.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise PirickError(f"PIRICK_CAPS entry {part!r} is not key=value")
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in _FIELDS:
                raise PirickError(f"PIRICK_CAPS has unknown cap {key!r} "
                                  f"(known: {', '.join(sorted(_FIELDS))})")
            try:
                values[key] = int(val.strip())
            except ValueError:
                raise PirickError(f"PIRICK_CAPS value for {key!r} is not an "
                                  f"integer: {val!r}") from None
    return Caps(**values)


DEFAULT_CAPS = caps_from_env()
