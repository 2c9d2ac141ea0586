"""Line-oriented algebra definition files.

Grammar (tokens whitespace-separated, '#' starts a comment):

    name <ident>
    dim <d>
    unit <d rationals>
    order none|atomic
    mult <i> <j> = <d rationals>     # one per unordered pair

Rationals are written `p` or `p/q` with q > 0.  The symmetric half of the
mult table may be omitted; for atomic algebras missing off-diagonal entries
default to zero.  Serialization emits the canonical form, so
parse -> serialize -> parse is the identity.
"""

from fractions import Fraction

from .algebra import (
    AlgebraSpec, ORDER_ATOMIC, ORDER_NONE, assess_domain, validate_algebra,
    zero_element,
)


class ParseError(ValueError):
    pass


def parse_rational(tok: str) -> Fraction:
    try:
        if "/" in tok:
            num, den = tok.split("/")
            d = int(den)
            if d <= 0:
                raise ParseError(f"rational {tok!r} must have a positive denominator")
            return Fraction(int(num), d)
        return Fraction(int(tok))
    except ValueError as exc:
        raise ParseError(f"malformed rational {tok!r}") from exc


def format_rational(x: Fraction) -> str:
    return str(x)


def parse_algebra_text(text: str, trials: int = 64, seed: int = 0) -> AlgebraSpec:
    name = None
    dim = None
    unit = None
    order = None
    mult = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        key = toks[0]
        if key == "name":
            if name is not None:
                raise ParseError(f"line {lineno}: duplicate name")
            if len(toks) != 2:
                raise ParseError(f"line {lineno}: name takes one identifier")
            name = toks[1]
        elif key == "dim":
            if dim is not None:
                raise ParseError(f"line {lineno}: duplicate dim")
            try:
                dim = int(toks[1])
            except (IndexError, ValueError):
                raise ParseError(f"line {lineno}: dim takes one integer")
            if dim < 1:
                raise ParseError(f"line {lineno}: dim must be >= 1")
        elif key == "unit":
            if unit is not None:
                raise ParseError(f"line {lineno}: duplicate unit")
            unit = tuple(parse_rational(t) for t in toks[1:])
        elif key == "order":
            if order is not None:
                raise ParseError(f"line {lineno}: duplicate order")
            if len(toks) != 2 or toks[1] not in (ORDER_NONE, ORDER_ATOMIC):
                raise ParseError(f"line {lineno}: order must be 'none' or 'atomic'")
            order = toks[1]
        elif key == "mult":
            if len(toks) < 5 or toks[3] != "=":
                raise ParseError(f"line {lineno}: expected 'mult i j = <values>'")
            try:
                i, j = int(toks[1]), int(toks[2])
            except ValueError:
                raise ParseError(f"line {lineno}: mult indices must be integers")
            value = tuple(parse_rational(t) for t in toks[4:])
            pair = (min(i, j), max(i, j))
            if pair in mult:
                if mult[pair] != value:
                    raise ParseError(
                        f"line {lineno}: conflicting duplicate for mult {pair[0]} {pair[1]}"
                    )
                raise ParseError(f"line {lineno}: duplicate mult {pair[0]} {pair[1]}")
            mult[pair] = value
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")

    if name is None:
        raise ParseError("missing name")
    if dim is None:
        raise ParseError("missing dim")
    if unit is None:
        raise ParseError("missing unit")
    if len(unit) != dim:
        raise ParseError(f"unit has {len(unit)} coordinates, expected {dim}")
    order = order or ORDER_NONE
    structure = []
    for i in range(dim):
        row = []
        for j in range(dim):
            pair = (min(i, j), max(i, j))
            if pair in mult:
                value = mult[pair]
                if len(value) != dim:
                    raise ParseError(
                        f"mult {pair[0]} {pair[1]} has {len(value)} coordinates, expected {dim}"
                    )
                row.append(value)
            elif order == ORDER_ATOMIC and i != j:
                row.append(zero_element(dim))
            else:
                raise ParseError(f"missing mult entry for pair ({pair[0]}, {pair[1]})")
        structure.append(tuple(row))
    for pair in mult:
        if not (0 <= pair[0] < dim and 0 <= pair[1] < dim):
            raise ParseError(f"mult indices {pair} out of range for dim {dim}")
    spec = AlgebraSpec(name=name, dim=dim, structure=tuple(structure),
                       unit=unit, order_mode=order)
    return assess_domain(spec, trials=trials, seed=seed)


def serialize_algebra(spec: AlgebraSpec) -> str:
    lines = [
        f"name {spec.name}",
        f"dim {spec.dim}",
        "unit " + " ".join(format_rational(x) for x in spec.unit),
        f"order {spec.order_mode}",
    ]
    for i in range(spec.dim):
        for j in range(i, spec.dim):
            entry = spec.structure[i][j]
            if spec.order_mode == ORDER_ATOMIC and i != j and not any(entry):
                continue
            lines.append(
                f"mult {i} {j} = " + " ".join(format_rational(x) for x in entry)
            )
    return "\n".join(lines) + "\n"


def parse_algebra_file(path: str, trials: int = 64, seed: int = 0,
                       validate: bool = True) -> AlgebraSpec:
    with open(path, "r", encoding="utf-8") as fh:
        spec = parse_algebra_text(fh.read(), trials=trials, seed=seed)
    if validate:
        violations = validate_algebra(spec)
        if violations:
            first = violations[0]
            raise ParseError(f"algebra law violated: {first.law} at {first.indices}")
    return spec
