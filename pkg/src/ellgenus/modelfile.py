"""Line-oriented model files: parse and serialize fixed-point data.

Format (hand-authorable; ``#`` starts a comment):

    [model]
    name = hirzebruch-w2
    k = 1
    level = 1

    [base]
    trunc_degree = 2
    generator = h 2

    [component zero]
    fiber_dim = 0
    fiber_generator = x 2          # optional, repeatable
    comp_trunc_degree = 2          # optional (default: base degree)
    tangent_roots =                # comma-separated polynomials
    normal = 1 | -h                # weight | root, root, ...
    v = 1 | 0                      # repeatable
    w = 2 | -1/2*h
    c1 = -1/2*h
    l_c = 2
    push = 1 -> 1                  # fiber monomial -> base polynomial

Polynomials are sums of rational-coefficient monomials in the declared
generators: ``-1/2*h + 3*h^2``, ``0``, ``2``.
"""

import re
from fractions import Fraction

from .cohomology import NilAlgebra, NilPoly, PushForward
from .errors import ModelError
from .model import FixedComponent, FixedPointModel, TwistBundle


class ParseError(ModelError):
    def __init__(self, lineno, msg):
        super().__init__("line %d: %s" % (lineno, msg))
        self.lineno = lineno


_TERM_RE = re.compile(r"""
    (?P<sign>[+-])?\s*
    (?P<coeff>\d+(?:/\d+)?)?\s*
    (?P<vars>(?:\*?\s*[A-Za-z_]\w*(?:\^\d+)?\s*)*)
    """, re.VERBOSE)


def parse_poly(text, alg, lineno=0):
    """Parse a sum of monomials into a NilPoly over ``alg``."""
    text = text.strip()
    if not text or text == "0":
        return alg.zero()
    names = alg.names()
    pos = 0
    out = alg.zero()
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(lineno, "cannot parse polynomial at %r"
                             % text[pos:])
        sign = m.group("sign")
        if sign is None and not first:
            raise ParseError(lineno, "missing +/- between terms in %r"
                             % text)
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if sign == "-":
            coeff = -coeff
        expo = [0] * len(names)
        varpart = m.group("vars") or ""
        for piece in re.findall(r"[A-Za-z_]\w*(?:\^\d+)?", varpart):
            if "^" in piece:
                name, p = piece.split("^")
                p = int(p)
            else:
                name, p = piece, 1
            if name not in names:
                raise ParseError(lineno, "unknown generator %r" % name)
            expo[names.index(name)] += p
        term = NilPoly(alg, {tuple(expo): alg.scalar(coeff)})
        out = out + term
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
        first = False
    return out


def render_poly(p):
    names = p.alg.names()
    if not p.terms:
        return "0"
    parts = []
    for mono in sorted(p.terms, key=lambda m: (p.alg.mono_degree(m), m)):
        c = p.terms[mono]
        factors = []
        for n, e in zip(names, mono):
            if e == 1:
                factors.append(n)
            elif e > 1:
                factors.append("%s^%d" % (n, e))
        body = "*".join(factors)
        if body:
            parts.append("%s*%s" % (c, body) if c != 1 else body)
        else:
            parts.append(str(c))
    return " + ".join(parts).replace("+ -", "- ")


def _parse_mono(text, fiber_names, lineno):
    text = text.strip()
    expo = [0] * len(fiber_names)
    if text == "1":
        return tuple(expo)
    for piece in re.findall(r"[A-Za-z_]\w*(?:\^\d+)?|\S", text):
        if piece == "*":
            continue
        if "^" in piece:
            name, p = piece.split("^")
            p = int(p)
        else:
            name, p = piece, 1
        if name not in fiber_names:
            raise ParseError(lineno, "unknown fiber generator %r" % name)
        expo[fiber_names.index(name)] += p
    return tuple(expo)


def _render_mono(mono, fiber_names):
    parts = []
    for n, e in zip(fiber_names, mono):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append("%s^%d" % (n, e))
    return "*".join(parts) if parts else "1"


def parse_model(text):
    """Parse a model file into a FixedPointModel."""
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError(lineno, "unterminated section header")
            current = (line[1:-1].strip(), lineno, [])
            sections.append(current)
            continue
        if current is None:
            raise ParseError(lineno, "content before any [section]")
        if "=" not in line:
            raise ParseError(lineno, "expected key = value, got %r" % line)
        key, val = line.split("=", 1)
        current[2].append((lineno, key.strip(), val.strip()))

    meta = {}
    base_gens = []
    base_D = 0
    comp_specs = []
    for name, lineno, entries in sections:
        if name == "model":
            for ln, k, v in entries:
                meta[k] = v
        elif name == "base":
            for ln, k, v in entries:
                if k == "trunc_degree":
                    base_D = int(v)
                elif k == "generator":
                    bits = v.split()
                    if len(bits) != 2:
                        raise ParseError(ln, "generator wants 'name degree'")
                    base_gens.append((bits[0], int(bits[1])))
                else:
                    raise ParseError(ln, "unknown base key %r" % k)
        elif name.startswith("component"):
            comp_specs.append((name[len("component"):].strip() or
                               "c%d" % len(comp_specs), lineno, entries))
        else:
            raise ParseError(lineno, "unknown section %r" % name)

    if "k" not in meta:
        raise ParseError(0, "missing k in [model]")
    base_alg = NilAlgebra(base_gens, base_D)
    comps = []
    for cname, lineno, entries in comp_specs:
        fiber_gens = []
        comp_D = None
        fiber_dim = 0
        fields = {"tangent_roots": "", "c1": "0", "l_c": "0"}
        bundles = {"normal": [], "v": [], "w": []}
        pushes = []
        for ln, k, v in entries:
            if k == "fiber_generator":
                bits = v.split()
                fiber_gens.append((bits[0], int(bits[1])))
            elif k == "comp_trunc_degree":
                comp_D = int(v)
            elif k == "fiber_dim":
                fiber_dim = int(v)
            elif k in ("tangent_roots", "c1", "l_c"):
                fields[k] = v
            elif k in bundles:
                if "|" not in v:
                    raise ParseError(ln, "%s wants 'weight | roots'" % k)
                wpart, roots = v.split("|", 1)
                bundles[k].append((ln, int(wpart.strip()), roots))
            elif k == "push":
                if "->" not in v:
                    raise ParseError(ln, "push wants 'monomial -> poly'")
                mono, poly = v.split("->", 1)
                pushes.append((ln, mono.strip(), poly.strip()))
            else:
                raise ParseError(ln, "unknown component key %r" % k)
        if comp_D is None:
            comp_D = base_D + sum(d for _, d in fiber_gens)
        comp_alg = NilAlgebra(base_gens + fiber_gens, comp_D)
        fiber_names = tuple(n for n, _ in fiber_gens)

        def poly(txt, ln):
            return parse_poly(txt, comp_alg, ln)

        def polylist(txt, ln):
            txt = txt.strip()
            if not txt:
                return []
            return [poly(p, ln) for p in txt.split(",")]

        table = {}
        for ln, mono, ptxt in pushes:
            table[_parse_mono(mono, fiber_names, ln)] = \
                parse_poly(ptxt, base_alg, ln)
        if not fiber_names and not table:
            table = {(): base_alg.one()}
        push = PushForward(comp_alg, base_alg, table, fiber_dim)
        comps.append(FixedComponent(
            cname,
            polylist(fields["tangent_roots"], lineno),
            [TwistBundle(w, polylist(r, ln))
             for ln, w, r in bundles["normal"]],
            [TwistBundle(w, polylist(r, ln)) for ln, w, r in bundles["v"]],
            [TwistBundle(w, polylist(r, ln)) for ln, w, r in bundles["w"]],
            poly(fields["c1"], lineno),
            int(fields["l_c"]),
            push))
    return FixedPointModel(meta.get("name", "model"), int(meta["k"]),
                           base_alg, comps, int(meta.get("level", 1)))


def serialize_model(model):
    """Render a FixedPointModel back into the model-file format."""
    out = ["[model]",
           "name = %s" % model.name,
           "k = %d" % model.k,
           "level = %d" % model.level,
           "",
           "[base]",
           "trunc_degree = %d" % model.base_alg.D]
    for v in model.base_alg.vars:
        out.append("generator = %s %d" % (v.name, v.degree))
    for comp in model.components:
        out.append("")
        out.append("[component %s]" % comp.name)
        out.append("fiber_dim = %d" % comp.push.fiber_dim)
        n_base = model.base_alg.nvars
        for v in comp.alg.vars[n_base:]:
            out.append("fiber_generator = %s %d" % (v.name, v.degree))
        out.append("comp_trunc_degree = %d" % comp.alg.D)
        out.append("tangent_roots = %s" % ", ".join(
            render_poly(r) for r in comp.tangent_roots))
        for key, parts in (("normal", comp.normal), ("v", comp.v_parts),
                           ("w", comp.w_parts)):
            for b in parts:
                out.append("%s = %d | %s" % (
                    key, b.weight, ", ".join(render_poly(r)
                                             for r in b.roots)))
        out.append("c1 = %s" % render_poly(comp.c1 if comp.c1 is not None
                                           else comp.alg.zero()))
        out.append("l_c = %d" % comp.l_c)
        fiber_names = tuple(v.name for v in comp.alg.vars[n_base:])
        for mono in sorted(comp.push.table):
            out.append("push = %s -> %s" % (
                _render_mono(mono, fiber_names),
                render_poly(comp.push.table[mono])))
    return "\n".join(out) + "\n"


def load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model(fh.read())
