"""JSON encoding of rings, prime sets, sequences, families and modules.

Every ``load_*`` function accepts parsed JSON (dicts and lists) plus a
``path`` string used in error messages, so a malformed document is reported
as e.g. ``levels[1].max: expected an object``. Every ``dump_*`` output loads
back to an equal object.
"""
from __future__ import annotations

from .charseq import CharacteristicSequence
from .coloc import PATTERN_FLAGS, CompatibleFamily, LocalSequence
from .errors import InputError
from .spectrum import (
    BitsetPrimeSet,
    DimOneSet,
    FinitePrimeSet,
    Integers,
    IntegerQuotient,
    PolyOverPrimeField,
    SpectrumPoset,
    Synthetic,
)
from .zhomology.modules import FgZModule, LocalizedModule, MatlisModule


def _fail(path, message):
    raise InputError(f"{path or '<root>'}: {message}")


def _obj(doc, path):
    if not isinstance(doc, dict):
        _fail(path, f"expected an object, got {type(doc).__name__}")
    return doc


def _list(doc, path):
    if not isinstance(doc, list):
        _fail(path, f"expected a list, got {type(doc).__name__}")
    return doc


def _int(doc, path, minimum=None):
    if isinstance(doc, bool) or not isinstance(doc, int):
        _fail(path, f"expected an integer, got {doc!r}")
    if minimum is not None and doc < minimum:
        _fail(path, f"expected an integer >= {minimum}, got {doc}")
    return doc


def _get(doc, key, path):
    if key not in doc:
        _fail(path, f"missing key {key!r}")
    return doc[key]


def _join(path, key):
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _guard(path, fn, *args):
    """Run a constructor, prefixing any InputError with ``path``."""
    try:
        return fn(*args)
    except InputError as exc:
        _fail(path, str(exc))


# ---------------------------------------------------------------------------
# rings


def dump_ring(ring):
    if isinstance(ring, Integers):
        return {"ring": "Z"}
    if isinstance(ring, PolyOverPrimeField):
        return {"ring": "PolyGF", "q": ring.q}
    if isinstance(ring, IntegerQuotient):
        return {"ring": "Zmod", "n": ring.n}
    if isinstance(ring, Synthetic):
        sp = ring.spectrum
        idx = sp.index
        out = {
            "ring": "synthetic",
            "primes": list(sp.nodes),
            "order": [[a, b] for a, b in sorted(sp.order, key=lambda ab: (idx[ab[0]], idx[ab[1]]))],
            "maximal": [v for v in sp.nodes if v in sp.maximal],
            "height": {v: h for v, h in zip(sp.nodes, sp.height)},
        }
        if sp.bass is not None:
            out["bass"] = {str(i): [v for v in sp.nodes if v in vs] for i, vs in sp.bass}
        if sp.gorenstein_heights:
            out["gorenstein_heights"] = True
        return out
    raise InputError(f"cannot serialize ring {ring!r}")


def load_ring(doc, path="ring"):
    doc = _obj(doc, path)
    kind = _get(doc, "ring", path)
    if kind == "Z":
        return Integers()
    if kind == "PolyGF":
        q = _int(_get(doc, "q", path), _join(path, "q"), 2)
        return _guard(_join(path, "q"), PolyOverPrimeField, q)
    if kind == "Zmod":
        n = _int(_get(doc, "n", path), _join(path, "n"), 2)
        return _guard(_join(path, "n"), IntegerQuotient, n)
    if kind == "synthetic":
        nodes = _list(_get(doc, "primes", path), _join(path, "primes"))
        order = _list(doc.get("order", []), _join(path, "order"))
        for k, pair in enumerate(order):
            if not isinstance(pair, list) or len(pair) != 2:
                _fail(_join(_join(path, "order"), k), "expected a pair [a, b]")
        height = doc.get("height")
        if height is not None:
            _obj(height, _join(path, "height"))
        bass = doc.get("bass")
        if bass is not None:
            bass_path = _join(path, "bass")
            _obj(bass, bass_path)
            parsed = {}
            for key, vs in bass.items():
                try:
                    parsed[int(key)] = _list(vs, _join(bass_path, key))
                except ValueError:
                    _fail(bass_path, f"degree key {key!r} is not an integer")
            bass = parsed
        spectrum = _guard(path, lambda: SpectrumPoset.build(
            nodes, [tuple(p) for p in order], maximal=doc.get("maximal"), height=height,
            bass=bass, gorenstein_heights=bool(doc.get("gorenstein_heights", False))))
        return Synthetic(spectrum)
    _fail(_join(path, "ring"), f"unknown ring kind {kind!r}; expected Z, PolyGF, Zmod or synthetic")


# ---------------------------------------------------------------------------
# prime sets


def _labels(ring, primes):
    return [p.label for p in sorted(primes, key=ring.prime_key)]


def dump_prime_set(s):
    if isinstance(s, FinitePrimeSet):
        return {"kind": "finite", "elems": _labels(s.ring, s.elems)}
    if isinstance(s, DimOneSet):
        labels = _labels(s.ring, s.maxes)
        key = "cofinite_excluding" if s.cofinite else "finite"
        return {"kind": "dim1", "zero": s.zero, "max": {key: labels}}
    if isinstance(s, BitsetPrimeSet):
        return {"kind": "bitset", "elems": [p.label for p in s.elements()]}
    raise InputError(f"cannot serialize prime set {s!r}")


def _parse_primes(ring, labels, path):
    out = []
    for k, label in enumerate(_list(labels, path)):
        out.append(_guard(_join(path, k), ring.parse_prime, label))
    return out


def load_prime_set(ring, doc, path="primeset"):
    doc = _obj(doc, path)
    kind = _get(doc, "kind", path)
    if kind == "dim1":
        if not ring.dimension_one:
            _fail(_join(path, "kind"), f"dim1 sets need a dimension-one ring, not {ring}")
        zero = _get(doc, "zero", path)
        if not isinstance(zero, bool):
            _fail(_join(path, "zero"), "expected true or false")
        mpath = _join(path, "max")
        spec = _obj(doc.get("max", {"finite": []}), mpath)
        if len(spec) != 1 or next(iter(spec)) not in ("finite", "cofinite_excluding"):
            _fail(mpath, "expected exactly one of 'finite' or 'cofinite_excluding'")
        key = next(iter(spec))
        maxes = _parse_primes(ring, spec[key], _join(mpath, key))
        for k, m in enumerate(maxes):
            if not ring.is_maximal(m):
                _fail(_join(_join(mpath, key), k), "(0) cannot be listed among maximal ideals")
        return ring.dim_one_set(zero, key == "cofinite_excluding", maxes)
    if kind in ("finite", "bitset"):
        expected = "bitset" if isinstance(ring, Synthetic) else "finite"
        if kind != expected or ring.dimension_one:
            _fail(_join(path, "kind"), f"ring {ring} uses {'dim1' if ring.dimension_one else expected} sets")
        return ring.prime_set(_parse_primes(ring, _get(doc, "elems", path), _join(path, "elems")))
    _fail(_join(path, "kind"), f"unknown prime set kind {kind!r}")


# ---------------------------------------------------------------------------
# sequences and families


def dump_sequence(seq):
    return {"ring": dump_ring(seq.ring), "n": seq.n,
            "levels": [dump_prime_set(level) for level in seq.levels]}


def _levels(ring, doc, n, path):
    docs = _list(doc, path)
    if n is not None and len(docs) != n:
        _fail(path, f"expected {n} levels, got {len(docs)}")
    return tuple(load_prime_set(ring, d, _join(path, k)) for k, d in enumerate(docs))


def load_sequence(doc, path=""):
    doc = _obj(doc, path)
    ring = load_ring(_get(doc, "ring", path), _join(path, "ring"))
    n = doc.get("n")
    if n is not None:
        n = _int(n, _join(path, "n"), 0)
    levels = _levels(ring, _get(doc, "levels", path), n, _join(path, "levels"))
    return CharacteristicSequence(ring, levels)


def dump_family(family):
    out = {"ring": dump_ring(family.ring), "n": family.n}
    if family.default is not None:
        out["default"] = [sorted(pat) for pat in family.default]
    out["exceptions"] = {m.label: [dump_prime_set(level) for level in local.levels]
                         for m, local in family.exceptions}
    return out


def load_family(doc, path=""):
    doc = _obj(doc, path)
    ring = load_ring(_get(doc, "ring", path), _join(path, "ring"))
    n = _int(_get(doc, "n", path), _join(path, "n"), 0)
    default = doc.get("default")
    if default is not None:
        dpath = _join(path, "default")
        pats = _list(default, dpath)
        for k, pat in enumerate(pats):
            if not isinstance(pat, list) or not set(pat) <= PATTERN_FLAGS:
                _fail(_join(dpath, k), f"pattern must be a subset of {sorted(PATTERN_FLAGS)}")
        default = tuple(frozenset(p) for p in pats)
    epath = _join(path, "exceptions")
    exceptions = {}
    for label, levels in _obj(doc.get("exceptions", {}), epath).items():
        here = _join(epath, label)
        m = _guard(here, ring.parse_prime, label)
        if not _guard(here, ring.is_maximal, m):
            _fail(here, f"{label} is not a maximal ideal")
        exceptions[m] = _guard(here, LocalSequence, ring, m, _levels(ring, levels, n, here))
    return _guard(path, CompatibleFamily, ring, n, default, exceptions)


# ---------------------------------------------------------------------------
# modules


def dump_module(M):
    return M.to_json()


def load_module(doc, path="module"):
    """Load an FgZModule, a LocalizedModule (key ``p``) or a MatlisModule (key ``divisible_rank``)."""
    doc = _obj(doc, path)
    if "divisible_rank" in doc:
        d = _int(doc["divisible_rank"], _join(path, "divisible_rank"), 0)
        finite = load_module(doc.get("finite", {}), _join(path, "finite"))
        if not isinstance(finite, FgZModule):
            _fail(_join(path, "finite"), "finite part must be a Z-module")
        return _guard(path, MatlisModule, d, finite)
    rank = _int(doc.get("rank", 0), _join(path, "rank"), 0)
    tpath = _join(path, "torsion")
    torsion = _list(doc.get("torsion", []), tpath)
    if "p" in doc:
        p = _int(doc["p"], _join(path, "p"), 2)
        for k, t in enumerate(torsion):
            if not isinstance(t, list) or len(t) != 2:
                _fail(_join(tpath, k), "expected [exponent, multiplicity]")
            _int(t[0], _join(_join(tpath, k), 0), 1)
            _int(t[1], _join(_join(tpath, k), 1), 0)
        return _guard(path, LocalizedModule, p, rank, tuple(tuple(t) for t in torsion))
    for k, t in enumerate(torsion):
        if not isinstance(t, list) or len(t) != 3:
            _fail(_join(tpath, k), "expected [prime, exponent, multiplicity]")
        for j, x in enumerate(t):
            _int(x, _join(_join(tpath, k), j), 0)
    return _guard(path, FgZModule, rank, tuple(tuple(t) for t in torsion))
