"""Self-describing JSON schemas for every artifact kind, plus FASTA input.

Each document carries a versioned "schema" field; dumps are byte-stable
(sorted keys, fixed orders) so round-trips are exact.  Words and alignment
rows may render the gap symbol as "ε" or an ASCII substitute, chosen
per call.
"""

import json
import re

from .dp_align import EPSILON, PairwiseAlignment
from .preorder import MonotoneMap, Preorder, monotone_map
from .segments import Segment, trivial_segment
from .environment import PointedAlphabet
from .alignment_functor import (
    BaseCategory,
    BuildPolicy,
    FiniteImage,
    HubImage,
    SeqAlignFunctor,
    StandardSetup,
    standard_setup,
)
from .preorder import chain_preorder, split_tuple_label, tuple_label


class ParseError(ValueError):
    pass


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _expect_schema(doc, name):
    if not isinstance(doc, dict) or doc.get("schema") != name:
        raise ParseError(f"expected a {name!r} document")


# -- pre-orders and maps ----------------------------------------------------

def preorder_doc(p: Preorder) -> dict:
    return {
        "schema": "catalign/preorder/1",
        "elements": list(p.elements),
        "relation": [[bool(v) for v in row] for row in p.relation],
    }


def preorder_from_doc(doc) -> Preorder:
    _expect_schema(doc, "catalign/preorder/1")
    try:
        return Preorder(
            tuple(doc["elements"]),
            tuple(tuple(bool(v) for v in row) for row in doc["relation"]),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad pre-order document: {exc}") from exc


def monotone_map_doc(m: MonotoneMap) -> dict:
    return {
        "schema": "catalign/monotone-map/1",
        "dom": preorder_doc(m.dom),
        "cod": preorder_doc(m.cod),
        "map": {x: y for x, y in m.mapping},
    }


def monotone_map_from_doc(doc) -> MonotoneMap:
    _expect_schema(doc, "catalign/monotone-map/1")
    dom = preorder_from_doc(doc["dom"])
    cod = preorder_from_doc(doc["cod"])
    return monotone_map(dom, cod, doc["map"])


# -- segments ---------------------------------------------------------------

def segment_doc(s: Segment) -> dict:
    return {
        "schema": "catalign/segment/1",
        "n1": s.n1,
        "topology": list(s.topology),
        "colors": list(s.colors),
    }


def segment_from_doc(doc, preorder: Preorder) -> Segment:
    _expect_schema(doc, "catalign/segment/1")
    seg = Segment(preorder, tuple(doc["topology"]), tuple(doc["colors"]))
    if seg.n1 != doc["n1"]:
        raise ParseError("segment document is inconsistent about n1")
    return seg


_SEGMENT_LITERAL = re.compile(r"^\(\s*!\s*(\d+)\s*,\s*\[([^\]]*)\]\s*\)$")


def parse_segment_literal(text: str, omega: Preorder, arity: int) -> Segment:
    """Compact form "(!8,[1100])": a one-patch segment with a tuple color."""
    m = _SEGMENT_LITERAL.match(text.strip())
    if not m:
        raise ParseError(f"not a segment literal: {text!r}")
    n = int(m.group(1))
    label = parse_level_literal("[" + m.group(2) + "]", omega, arity)
    return trivial_segment(omega, n, label)


def parse_level_literal(text: str, omega: Preorder, arity: int) -> str:
    """A color tuple like "[1100]", "1100" or "[1,1,0,0]"."""
    text = text.strip()
    if not text.startswith("["):
        text = "[" + text + "]"
    parts = split_tuple_label(text, arity)
    label = tuple_label(parts)
    if label not in omega:
        raise ParseError(f"{label!r} is not a color of the configured product")
    return label


# -- sequences and alignments ----------------------------------------------

def read_fasta(text: str) -> dict[str, str]:
    names: list[str] = []
    rows: dict[str, list[str]] = {}
    current = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            current = line[1:].split()[0]
            if not current or current in rows:
                raise ParseError(f"bad or repeated FASTA header {line!r}")
            names.append(current)
            rows[current] = []
        else:
            if current is None:
                raise ParseError("sequence data before any FASTA header")
            rows[current].append(line)
    if not names:
        raise ParseError("no FASTA records found")
    return {n: "".join(rows[n]).upper() for n in names}


def read_individuals(text: str) -> dict[str, str]:
    """FASTA or a JSON object {"name": "sequence"}."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON input: {exc}") from exc
        if not isinstance(doc, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in doc.items()
        ):
            raise ParseError("JSON input must map names to sequences")
        return doc
    return read_fasta(text)


def render_row(row: str, epsilon_out: str) -> str:
    return row.replace(EPSILON, epsilon_out)


def parse_row(row: str, epsilon_out: str) -> str:
    return row.replace(epsilon_out, EPSILON)


def alignments_doc(pairwise, epsilon_out: str = EPSILON) -> dict:
    items = []
    for (x, y), by_length in sorted(pairwise.items()):
        for n in sorted(by_length):
            for al in by_length[n]:
                items.append(
                    {
                        "pair": [x, y],
                        "length": n,
                        "top": render_row(al.top, epsilon_out),
                        "bottom": render_row(al.bottom, epsilon_out),
                    }
                )
    return {
        "schema": "catalign/alignments/1",
        "epsilon": epsilon_out,
        "alignments": items,
    }


def alignments_from_doc(doc) -> dict:
    _expect_schema(doc, "catalign/alignments/1")
    eps = doc.get("epsilon", EPSILON)
    out: dict = {}
    for item in doc["alignments"]:
        pair = tuple(item["pair"])
        al = PairwiseAlignment(
            parse_row(item["top"], eps), parse_row(item["bottom"], eps)
        )
        out.setdefault(pair, {}).setdefault(item["length"], []).append(al)
    return out


# -- configuration ----------------------------------------------------------

def config_doc(names, factor_size=2, level="1", hubs=(), caps=None,
               epsilon_out=EPSILON) -> dict:
    return {
        "schema": "catalign/config/1",
        "names": list(names),
        "factor_chain": factor_size,
        "level": level,
        "hubs": [[n, name] for n, name in hubs],
        "caps": caps or {},
        "epsilon": epsilon_out,
    }


class Config:
    def __init__(self, doc):
        _expect_schema(doc, "catalign/config/1")
        self.names = tuple(doc["names"])
        if len(set(self.names)) != len(self.names):
            raise ParseError("individual names must be unique")
        self.factor = chain_preorder(int(doc.get("factor_chain", 2)))
        self.setup = standard_setup(self.names, self.factor)
        value = str(doc.get("level", "1"))
        if value not in self.factor:
            raise ParseError(f"level {value!r} is not a factor color")
        self.level = self.setup.level(value)
        hubs = [tuple(h) for h in doc.get("hubs", [])]
        for n, name in hubs:
            if name not in self.names:
                raise ParseError(f"hub names unknown individual {name!r}")
            if int(n) <= 0:
                raise ParseError("hub domain sizes must be positive")
        self.policy = BuildPolicy(tuple((int(n), name) for n, name in hubs))
        caps = doc.get("caps", {})
        self.cap = int(caps.get("limit", 10_000_000))
        self.epsilon_out = doc.get("epsilon", EPSILON)
        alphabet = doc.get("alphabet")
        if alphabet:
            self.alphabet = PointedAlphabet(
                tuple(alphabet["symbols"]), alphabet["basepoint"]
            )
        else:
            from .environment import dna_alphabet

            self.alphabet = dna_alphabet()


# -- functor files ----------------------------------------------------------

def functor_doc(functor: SeqAlignFunctor, epsilon_out: str = EPSILON) -> dict:
    spec = functor.spec
    objects = []
    for k, seg in enumerate(functor.base.objects):
        img = functor.images[k]
        if isinstance(img, HubImage):
            image_doc = {"kind": "full-environment"}
        else:
            rows = []
            for x in img:
                rows.append(
                    {
                        i: render_row(w.text(), epsilon_out)
                        for i, w in zip(spec.indices, x.words)
                        if len(w.letters) > 0
                    }
                )
            image_doc = {"kind": "finite", "elements": rows}
        objects.append({"segment": segment_doc(seg), "image": image_doc})
    return {
        "schema": "catalign/functor/1",
        "names": list(spec.indices),
        "factor_chain": len(functor.base.objects[0].preorder.elements)
        if functor.base.objects
        else 2,
        "level": functor.level,
        "epsilon": epsilon_out,
        "alphabet": {
            "symbols": [
                render_row(s, epsilon_out) for s in functor.alphabet.symbols
            ],
            "basepoint": render_row(functor.alphabet.basepoint, epsilon_out),
        },
        "objects": objects,
    }


def functor_from_doc(doc) -> tuple[SeqAlignFunctor, StandardSetup]:
    _expect_schema(doc, "catalign/functor/1")
    from .environment import aligned_tuple

    names = tuple(doc["names"])
    eps = doc.get("epsilon", EPSILON)
    setup = standard_setup(names, chain_preorder(int(doc.get("factor_chain", 2))))
    alphabet = PointedAlphabet(
        tuple(parse_row(s, eps) for s in doc["alphabet"]["symbols"]),
        parse_row(doc["alphabet"]["basepoint"], eps),
    )
    level = doc["level"]
    if level not in setup.omega:
        raise ParseError(f"level {level!r} is not a color of the product")
    segments = [segment_from_doc(obj["segment"], setup.omega) for obj in doc["objects"]]
    images = []
    for seg, obj in zip(segments, doc["objects"]):
        image_doc = obj["image"]
        if image_doc["kind"] == "full-environment":
            images.append(HubImage(setup.spec, seg, level, alphabet))
        else:
            elements = tuple(
                aligned_tuple(
                    setup.spec, seg, level, alphabet,
                    {i: parse_row(r, eps) for i, r in rows.items()},
                )
                for rows in image_doc["elements"]
            )
            images.append(FiniteImage(elements))
    base = BaseCategory(tuple(segments))
    functor = SeqAlignFunctor(base, setup.spec, level, alphabet, tuple(images))
    return functor, setup


# -- reports ----------------------------------------------------------------

def ran_doc(ev, epsilon_out: str = EPSILON, materialized=None) -> dict:
    doc = {
        "schema": "catalign/ran/1",
        "tau": segment_doc(ev.tau),
        "cardinality": ev.cardinality,
        "factors": ev.factors(),
        "dropped_full_factors": len(ev.dropped),
    }
    if materialized is not None:
        doc["elements"] = [
            [
                {
                    i: render_row(w.text(), epsilon_out)
                    for i, w in zip(value.spec.indices, value.words)
                    if len(w.letters) > 0
                }
                for value in element
            ]
            for element in materialized
        ]
    return doc


def cone_report_doc(results) -> dict:
    return {
        "schema": "catalign/cone-report/1",
        "cones": [
            {"apex": apex, "level": level, "classification": cls}
            for apex, level, cls in results
        ],
    }


def pedigrad_report_doc(report) -> dict:
    return {
        "schema": "catalign/pedigrad-report/1",
        "mode": report.mode,
        "passed": report.passed,
        "cones": [
            {
                "apex": c.cone.apex.display(),
                "classification": c.classification,
                "passed": c.passed,
                "method": c.method,
            }
            for c in report.checks
        ],
    }


def slice_doc(sl, elements, epsilon_out: str = EPSILON) -> dict:
    return {
        "schema": "catalign/slice-report/1",
        "tau": segment_doc(sl.evaluation.tau),
        "index": sl.index,
        "lifted": [
            {
                "word": render_row(e.word.text(), epsilon_out),
            }
            for e in elements
        ],
        "empty": sl.is_empty,
    }


def mechanisms_doc(findings, epsilon_out: str = EPSILON) -> dict:
    return {
        "schema": "catalign/mechanism-report/1",
        "mechanisms": [
            {
                "kind": f.kind,
                "block_start": f.block_start,
                "block_length": f.block_length,
                "witness_word": render_row(f.witness_word.text(), epsilon_out),
                "partners": list(f.partners),
            }
            for f in findings
        ],
    }
