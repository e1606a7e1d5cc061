"""
Input Parser Module
Reads curve, reduction data and lattice files, and Laurent polynomial
expressions over the declared residue field
"""

import logging
import re
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple, Union

from pydantic import ValidationError

from .errors import ParseError
from .galois_lattice import CyclicLatticeAction
from .local_field import LaurentSeries, ResidueField, parse_field
from .series_core import ReductionData, WildEllipticData
from .tate import WeierstrassModel

logger = logging.getLogger(__name__)

_COEFFICIENT_KEYS = ("a1", "a2", "a3", "a4", "a6")

_KEY_VALUE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*[:=]\s*(.*?)\s*$")
_INTEGER = re.compile(r"\d+")
_SPACE = re.compile(r"\s*")


def _lines(text: str) -> Iterator[Tuple[int, str]]:
    """Numbered lines with comments stripped, skipping blanks"""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield number, line


class LaurentParser:
    """
    Recursive descent over
        expr  := term (('+'|'-') term)*
        term  := coeff ('*' monomial)? | monomial
        monomial := 't' ('^' int)?
        coeff := integer ('/' integer)?
    """

    def __init__(self, text: str, field: ResidueField, line: int = 0, offset: int = 0):
        """
        Args:
            text: Expression source
            field: Field the coefficients are read into
            line: Line number for error reports
            offset: Column of text[0] in that line, 0-based
        """
        self.text = text
        self.field = field
        self.line = line
        self.offset = offset
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.offset + self.pos + 1)

    def skip(self) -> None:
        self.pos = _SPACE.match(self.text, self.pos).end()

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"Expected {char!r}, found {found}")
        self.pos += 1

    def integer(self, signed: bool = False) -> int:
        self.skip()
        sign = 1
        if signed and self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
            self.skip()
        match = _INTEGER.match(self.text, self.pos)
        if not match:
            raise self.error("Expected an integer")
        self.pos = match.end()
        return sign * int(match.group())

    def monomial(self) -> int:
        self.expect("t")
        if self.peek() == "^":
            self.pos += 1
            return self.integer(signed=True)
        return 1

    def term(self) -> Tuple[int, Fraction]:
        if self.peek() == "t":
            return self.monomial(), Fraction(1)
        numerator = self.integer()
        coefficient = Fraction(numerator)
        if self.peek() == "/":
            self.pos += 1
            denominator = self.integer()
            if denominator == 0:
                raise self.error("Zero denominator")
            coefficient = Fraction(numerator, denominator)
        if self.peek() == "*":
            self.pos += 1
            return self.monomial(), coefficient
        return 0, coefficient

    def parse(self) -> LaurentSeries:
        terms: Dict[int, Fraction] = {}
        sign = 1
        if self.peek() in ("+", "-") and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        while True:
            exponent, coefficient = self.term()
            terms[exponent] = terms.get(exponent, Fraction(0)) + sign * coefficient
            nxt = self.peek()
            if not nxt:
                break
            if nxt not in "+-":
                raise self.error(f"Unexpected {nxt!r}")
            sign = -1 if nxt == "-" else 1
            self.pos += 1

        try:
            values = {k: self.field(c) for k, c in terms.items()}
        except ValueError as exc:
            raise ParseError(str(exc), self.line, self.offset + 1) from exc
        return LaurentSeries(self.field, values)


def parse_laurent(text: str, field: ResidueField, line: int = 0, offset: int = 0) -> LaurentSeries:
    """Parse a Laurent polynomial such as '1 + 3*t^2 - t^-1'"""
    return LaurentParser(text, field, line, offset).parse()


def read_key_values(text: str) -> List[Tuple[int, str, str, int]]:
    """(line, key, value, 0-based column of value) for every entry"""
    entries = []
    for number, line in _lines(text):
        match = _KEY_VALUE.match(line)
        if not match:
            raise ParseError("Expected 'key = value'", number, 1)
        entries.append((number, match.group(1).lower(), match.group(2), match.start(2)))
    return entries


def parse_curve_file(text: str) -> WeierstrassModel:
    """
    Parse a curve file

    Args:
        text: Lines 'field = Q' and 'a1 = ...' to 'a6 = ...'; missing
            coefficients are zero, a missing field means Q

    Returns:
        WeierstrassModel over the declared field

    Raises:
        ParseError: Malformed line or expression
        UnsupportedField: Unknown field label
    """
    entries = read_key_values(text)
    field_label = "Q"
    for number, key, value, _ in entries:
        if key == "field":
            field_label = value
    field = parse_field(field_label)

    coefficients = {key: LaurentSeries.zero(field) for key in _COEFFICIENT_KEYS}
    for number, key, value, column in entries:
        if key == "field":
            continue
        if key not in coefficients:
            raise ParseError(f"Unknown key {key!r}", number, 1)
        coefficients[key] = parse_laurent(value, field, number, column)

    logger.debug("Parsed curve over %s", field.label)
    return WeierstrassModel(**coefficients)


def _tower_entry(value: str, number: int, column: int, size: int) -> List[int]:
    fields = value.split()
    if len(fields) != size or not all(re.fullmatch(r"\d+", f) for f in fields):
        raise ParseError(f"Tower entry must be {size} nonnegative integers", number, column + 1)
    return [int(f) for f in fields]


def parse_data_file(text: str) -> Union[ReductionData, WildEllipticData]:
    """
    Parse an abstract reduction data file

    Keys p, e, regime, potential_good and 'tower = a phi t' lines give
    ReductionData; keys p, e_prime and 'tower = a phi' lines give
    WildEllipticData

    Raises:
        ParseError: Malformed line or data violating its invariants
    """
    entries = read_key_values(text)
    keys = {key for _, key, _, _ in entries}
    wild = "e_prime" in keys
    scalars: Dict[str, object] = {}
    tower: Dict[int, object] = {}

    for number, key, value, column in entries:
        if key == "tower":
            row = _tower_entry(value, number, column, 2 if wild else 3)
            tower[row[0]] = row[1] if wild else (row[1], row[2])
        elif key in ("p", "e", "e_prime"):
            if not re.fullmatch(r"\d+", value):
                raise ParseError(f"{key} must be a positive integer", number, column + 1)
            scalars[key] = int(value)
        elif key == "regime":
            scalars[key] = value
        elif key == "potential_good":
            scalars[key] = value.lower() in ("1", "yes", "true")
        else:
            raise ParseError(f"Unknown key {key!r}", number, 1)

    try:
        if wild:
            return WildEllipticData(p=scalars.get("p"), e_prime=scalars["e_prime"], tower=tower)
        return ReductionData(tower=tower, **scalars)
    except (KeyError, ValidationError, TypeError) as exc:
        raise ParseError(f"Invalid reduction data: {exc}") from exc


def parse_lattice_file(text: str) -> CyclicLatticeAction:
    """
    Parse 'rank n', 'order e' and n rows of n integers

    Raises:
        ParseError: Malformed file or a matrix of the wrong order
    """
    lines = list(_lines(text))
    header: Dict[str, int] = {}
    rows: List[Tuple[int, ...]] = []
    for number, line in lines:
        words = line.split()
        if words[0] in ("rank", "order"):
            if len(words) != 2 or not re.fullmatch(r"\d+", words[1]):
                raise ParseError(f"Expected '{words[0]} <integer>'", number, 1)
            header[words[0]] = int(words[1])
            continue
        try:
            rows.append(tuple(int(w) for w in words))
        except ValueError as exc:
            raise ParseError("Matrix rows must contain integers", number, 1) from exc

    if "rank" not in header or "order" not in header:
        raise ParseError("Lattice file needs 'rank' and 'order' lines")
    try:
        return CyclicLatticeAction(rank=header["rank"], order=header["order"], matrix=tuple(rows))
    except ValidationError as exc:
        raise ParseError(f"Invalid lattice action: {exc}") from exc
