"""Exact computation over finite rings and finite right modules.

The package decides module- and ring-level properties in the dual Rickart /
π-regularity family, produces explicit witnesses (exponents, idempotents,
complements), and machine-checks a registry of implications between those
properties over corpora of small instances.

Typical entry points:

- :func:`pirick.families.zmod` and friends build standard instances.
- :func:`pirick.properties.analyze` decides every supported property of a
  module and collects witnesses.
- :func:`pirick.theorems.verify_all` runs the implication registry.
- :mod:`pirick.cli` is the ``pirick`` command.
"""

__version__ = "1.0.0"
