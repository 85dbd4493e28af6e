"""Python front end for the focml species compiler.

    >>> import focml
    >>> p = focml.compile_files(["samples/example.fcl"])
    >>> p.eval("In_5_10", "filter", [12])
    (10, 'Too_high')
"""

import json

from ._focml import Program, compile_files, compile_text, run

__all__ = ["Program", "compile_files", "compile_text", "run", "deps"]


def deps(program):
    """Dependency report of `program` as a dict."""
    return json.loads(program.deps_json())
