""" Parser for mode preparations written as in run config files, e.g.

    vacuum
    coherent(alpha=0.1+0.05j)
    fock(n=2)
    squeezed(r=0.5, phi=pi)
    thermal(nbar=0.1)
"""
import math

from parsimonious import Grammar, NodeVisitor
from parsimonious.exceptions import ParseError

from src.errors import ConfigError, InvalidParameter
from src.fock_core.states import ModePreparation

GRAMMAR = r"""
mode     = ws kind ws
kind     = coherent / fock / squeezed / thermal / vacuum

vacuum   = "vacuum" (ws "(" ws ")")?
coherent = "coherent" ws "(" ws alpha ws ")"
fock     = "fock" ws "(" ws n ws ")"
squeezed = "squeezed" ws "(" ws r (ws "," ws phi)? ws ")"
thermal  = "thermal" ws "(" ws nbar ws ")"

alpha    = "alpha" ws "=" ws complex
n        = "n" ws "=" ws integer
r        = "r" ws "=" ws real
phi      = "phi" ws "=" ws angle
nbar     = "nbar" ws "=" ws real

angle    = pi_mult / real
pi_mult  = ~r"[-+]?([0-9]+\.?[0-9]*([eE][-+]?[0-9]+)?)?\*?pi"
complex  = ~r"[-+0-9.eEjJ]+"
real     = ~r"[-+]?([0-9]+\.?[0-9]*|\.[0-9]+)([eE][-+]?[0-9]+)?"
integer  = ~r"[0-9]+"
ws       = ~r"\s*"
"""

ANGLE_GRAMMAR = Grammar(GRAMMAR).default("angle")
MODE_GRAMMAR = Grammar(GRAMMAR)


def _collect(visited) -> dict:
    """Gather the (name, value) pairs produced by the parameter rules."""
    found = {}
    stack = [visited]
    while stack:
        item = stack.pop()
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], str):
            found[item[0]] = item[1]
        elif isinstance(item, list):
            stack.extend(item)
    return found


class ModeVisitor(NodeVisitor):
    unwrapped_exceptions = (ConfigError, InvalidParameter)

    def visit_mode(self, node, visited):
        return visited[1]

    def visit_kind(self, node, visited):
        return visited[0]

    def visit_vacuum(self, node, visited):
        return ModePreparation.vacuum()

    def visit_coherent(self, node, visited):
        return ModePreparation.coherent(_collect(visited)["alpha"])

    def visit_fock(self, node, visited):
        return ModePreparation.fock(_collect(visited)["n"])

    def visit_squeezed(self, node, visited):
        params = _collect(visited)
        return ModePreparation.squeezed(params["r"], params.get("phi", 0.0))

    def visit_thermal(self, node, visited):
        return ModePreparation.thermal(_collect(visited)["nbar"])

    def visit_alpha(self, node, visited):
        return ("alpha", visited[-1])

    def visit_n(self, node, visited):
        return ("n", visited[-1])

    def visit_r(self, node, visited):
        return ("r", visited[-1])

    def visit_phi(self, node, visited):
        return ("phi", visited[-1])

    def visit_nbar(self, node, visited):
        return ("nbar", visited[-1])

    def visit_angle(self, node, visited):
        return visited[0]

    def visit_pi_mult(self, node, visited):
        factor = node.text[:-2].rstrip("*")
        if factor in ("", "+"):
            return math.pi
        if factor == "-":
            return -math.pi
        return float(factor) * math.pi

    def visit_complex(self, node, visited):
        try:
            return complex(node.text)
        except ValueError:
            raise ConfigError(f"not a complex number: {node.text!r}") from None

    def visit_real(self, node, visited):
        return float(node.text)

    def visit_integer(self, node, visited):
        return int(node.text)

    def generic_visit(self, node, visited):
        return visited or node


def parse_mode(text: str) -> ModePreparation:
    """ModePreparation from its text form.

    Raises:
        ConfigError: for text outside the grammar.
        InvalidParameter: for parameters outside their domain (e.g. r < 0).
    """
    try:
        return ModeVisitor().visit(MODE_GRAMMAR.parse(text.strip()))
    except ParseError as e:
        raise ConfigError(f"cannot parse mode {text!r}: {e}") from None


def parse_angle(text) -> float:
    """Angle in radians, accepting multiples of pi such as '-pi', '0.5*pi'."""
    if isinstance(text, (int, float)):
        return float(text)
    try:
        return ModeVisitor().visit(ANGLE_GRAMMAR.parse(str(text).strip()))
    except ParseError as e:
        raise ConfigError(f"cannot parse angle {text!r}: {e}") from None
