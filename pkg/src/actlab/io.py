"""Line-oriented text formats for monoids, acts and N-acts.

    monoid <name> order <n> identity <i>      then n rows of n indices
    act <name> over <monoid-name> size <m>    then m rows, one index per monoid element
    natact <name> size <m>                    then ``step`` and m indices

``#`` starts a comment line; all indices are 0-based. A file may hold several
blocks; an act's monoid is looked up among earlier blocks, then in the
supplied mapping, then among the built-in monoids.
"""
from .act import FiniteAct, validate_act
from .errors import ParseError
from .monoid import BUILTIN_MONOIDS, FiniteMonoid, validate_monoid
from .natacts import NatAct, natact


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line.split()


def _ints(no, words, count, what):
    if len(words) != count:
        raise ParseError(no, f"{what}: expected {count} indices, got {len(words)}")
    try:
        return [int(w) for w in words]
    except ValueError:
        raise ParseError(no, f"{what}: non-integer entry") from None


def _keyword(no, head, key, pos):
    if len(head) <= pos + 1 or head[pos] != key:
        raise ParseError(no, f"expected '{key} <value>' in header")
    try:
        return int(head[pos + 1])
    except ValueError:
        raise ParseError(no, f"'{key}' needs an integer") from None


def _take(lines, no, count, what):
    rows = []
    for _ in range(count):
        try:
            rows.append(next(lines))
        except StopIteration:
            raise ParseError(no, f"{what}: file ended early") from None
    return rows


def parse_blocks(text, monoids=None):
    """Every object in ``text``, in file order."""
    known = dict(monoids or {})
    out = []
    lines = _lines(text)
    for no, head in lines:
        kind = head[0]
        if kind == "monoid":
            if len(head) < 2:
                raise ParseError(no, "monoid header needs a name")
            name = head[1]
            n = _keyword(no, head, "order", 2)
            e = _keyword(no, head, "identity", 4)
            if n < 1:
                raise ParseError(no, "order must be positive")
            rows = [_ints(rno, r, n, f"row {i}") for i, (rno, r) in enumerate(_take(lines, no, n, name))]
            M = validate_monoid(rows, e, name)
            known[name] = M
            out.append(M)
        elif kind == "act":
            if len(head) < 4 or head[2] != "over":
                raise ParseError(no, "act header must read 'act <name> over <monoid> size <m>'")
            name, mname = head[1], head[3]
            m = _keyword(no, head, "size", 4)
            M = known.get(mname) or BUILTIN_MONOIDS.get(mname)
            if M is None:
                raise ParseError(no, f"unknown monoid {mname!r}")
            if callable(M):
                M = M()
            rows = [_ints(rno, r, M.order, f"row {i}") for i, (rno, r) in enumerate(_take(lines, no, m, name))]
            out.append(validate_act(M, rows, name))
        elif kind == "natact":
            # both 'natact <name> size <m>' and the short 'natact <m>' are accepted
            if len(head) == 2:
                name, m = "", _keyword(no, ["size", head[1]], "size", 0)
            else:
                name, m = head[1], _keyword(no, head, "size", 2)
            (sno, step), = _take(lines, no, 1, "natact")
            if step[0] != "step":
                raise ParseError(sno, "expected 'step' line")
            try:
                out.append(natact(_ints(sno, step[1:], m, "step"), name))
            except ParseError:
                raise
            except Exception as exc:
                raise ParseError(sno, str(exc)) from None
        else:
            raise ParseError(no, f"unknown block type {kind!r}")
    if not out:
        raise ParseError(0, "no monoid, act or natact block found")
    return out


def _read(source):
    if hasattr(source, "read"):
        return source.read()
    if "\n" in str(source):
        return str(source)
    with open(source) as fh:
        return fh.read()


def parse_monoid(source):
    objs = [o for o in parse_blocks(_read(source)) if isinstance(o, FiniteMonoid)]
    if not objs:
        raise ParseError(0, "no monoid block")
    return objs[0]


def parse_act(source, monoids=None):
    """The last act or N-act in the file (monoid blocks before it are in scope)."""
    objs = [o for o in parse_blocks(_read(source), monoids) if isinstance(o, (FiniteAct, NatAct))]
    if not objs:
        raise ParseError(0, "no act block")
    return objs[-1]


def serialize(obj, monoid_name=None):
    if isinstance(obj, FiniteMonoid):
        lines = [f"monoid {obj.name or 'M'} order {obj.order} identity {obj.identity}"]
        lines += [" ".join(map(str, row)) for row in obj.table]
    elif isinstance(obj, NatAct):
        lines = [f"natact {obj.name or 'X'} size {obj.size}", "step " + " ".join(map(str, obj.step))]
    elif isinstance(obj, FiniteAct):
        mname = monoid_name or obj.monoid.name or "M"
        lines = [f"act {obj.name or 'X'} over {mname} size {obj.size}"]
        lines += [" ".join(map(str, row)) for row in obj.action]
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def serialize_with_monoid(X):
    """An act together with its monoid block, so the file stands alone."""
    if isinstance(X, NatAct):
        return serialize(X)
    return serialize(X.monoid) + serialize(X, X.monoid.name or "M")
