"""Certificate persistence.

Certificates are stored as a JSON document with sorted keys and two-space
indentation, so serialize -> parse -> serialize is byte-identical.  Schema
(documented here and in the README):

  {"format": "artinrf-certificate", "version": 1, "root": <node>}

  base node:          {"kind": "base", "subject": [v...],
                       "tag": <BaseKind value>, "detail": str}
  free product node:  {"kind": "free-product", "subject": [v...],
                       "children": [<node>...]}
  amalgam node:       {"kind": "amalgam", "subject": [v...],
                       "x1": [v...], "x2": [v...], "x0": [v...],
                       "witness1": <witness>, "witness2": <witness>,
                       "children": [<node>, <node>]}
  witness:            {"kind": "fold", "target": v, "domain": [v...]}
                   or {"kind": "kill", "victims": [v...], "domain": [v...]}

All vertex lists are sorted.  Unknown fields or kinds are rejected.
"""

from __future__ import annotations

import json

from .certificate import Amalgam, Base, Certificate, FoldTo, FreeProduct, Kill, Witness
from .recognizers import BaseKind, BaseTag

__all__ = [
    "CertificateFormatError",
    "FORMAT_NAME",
    "FORMAT_VERSION",
    "serialize_certificate",
    "parse_certificate",
    "save_certificate",
    "load_certificate",
]

FORMAT_NAME = "artinrf-certificate"
FORMAT_VERSION = 1


class CertificateFormatError(ValueError):
    """The document does not match the certificate schema."""


def _witness_to_obj(w: Witness) -> dict:
    if isinstance(w, FoldTo):
        return {"kind": "fold", "target": w.target, "domain": sorted(w.domain)}
    if isinstance(w, Kill):
        return {"kind": "kill", "victims": sorted(w.victims), "domain": sorted(w.domain)}
    raise CertificateFormatError(f"unknown witness type {type(w).__name__!r}")


def _node_to_obj(node: Certificate) -> dict:
    if isinstance(node, Base):
        return {
            "kind": "base",
            "subject": list(node.subject),
            "tag": node.tag.kind.value,
            "detail": node.tag.detail,
        }
    if isinstance(node, FreeProduct):
        return {
            "kind": "free-product",
            "subject": list(node.subject),
            "children": [_node_to_obj(c) for c in node.children],
        }
    if isinstance(node, Amalgam):
        return {
            "kind": "amalgam",
            "subject": list(node.subject),
            "x1": list(node.x1),
            "x2": list(node.x2),
            "x0": list(node.x0),
            "witness1": _witness_to_obj(node.witness1),
            "witness2": _witness_to_obj(node.witness2),
            "children": [_node_to_obj(node.child1), _node_to_obj(node.child2)],
        }
    raise CertificateFormatError(f"unknown node type {type(node).__name__!r}")


def serialize_certificate(cert: Certificate) -> str:
    doc = {"format": FORMAT_NAME, "version": FORMAT_VERSION, "root": _node_to_obj(cert)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _expect_keys(obj: dict, keys: set[str], what: str) -> None:
    if set(obj) != keys:
        raise CertificateFormatError(
            f"{what} must have fields {sorted(keys)}, got {sorted(obj)}"
        )


def _vertex_list(value, what: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise CertificateFormatError(f"{what} must be a list of strings")
    if value != sorted(set(value)):
        raise CertificateFormatError(f"{what} must be sorted and duplicate-free")
    return tuple(value)


def _witness_from_obj(obj, what: str) -> Witness:
    if not isinstance(obj, dict):
        raise CertificateFormatError(f"{what} must be an object")
    kind = obj.get("kind")
    if kind == "fold":
        _expect_keys(obj, {"kind", "target", "domain"}, what)
        if not isinstance(obj["target"], str):
            raise CertificateFormatError(f"{what}: fold target must be a string")
        return FoldTo(obj["target"], frozenset(_vertex_list(obj["domain"], f"{what}.domain")))
    if kind == "kill":
        _expect_keys(obj, {"kind", "victims", "domain"}, what)
        return Kill(
            frozenset(_vertex_list(obj["victims"], f"{what}.victims")),
            frozenset(_vertex_list(obj["domain"], f"{what}.domain")),
        )
    raise CertificateFormatError(f"{what}: unknown witness kind {kind!r}")


def _node_from_obj(obj, path: str) -> Certificate:
    if not isinstance(obj, dict):
        raise CertificateFormatError(f"node {path}: must be an object")
    kind = obj.get("kind")
    if kind == "base":
        _expect_keys(obj, {"kind", "subject", "tag", "detail"}, f"base node {path}")
        try:
            tag_kind = BaseKind(obj["tag"])
        except ValueError:
            raise CertificateFormatError(
                f"node {path}: unknown base tag {obj['tag']!r}"
            ) from None
        if not isinstance(obj["detail"], str):
            raise CertificateFormatError(f"node {path}: detail must be a string")
        return Base(
            _vertex_list(obj["subject"], f"node {path} subject"),
            BaseTag(tag_kind, obj["detail"]),
        )
    if kind == "free-product":
        _expect_keys(obj, {"kind", "subject", "children"}, f"free-product node {path}")
        children = obj["children"]
        if not isinstance(children, list) or not children:
            raise CertificateFormatError(f"node {path}: children must be a nonempty list")
        return FreeProduct(
            _vertex_list(obj["subject"], f"node {path} subject"),
            tuple(_node_from_obj(c, f"{path}.{i}") for i, c in enumerate(children)),
        )
    if kind == "amalgam":
        _expect_keys(
            obj,
            {"kind", "subject", "x1", "x2", "x0", "witness1", "witness2", "children"},
            f"amalgam node {path}",
        )
        children = obj["children"]
        if not isinstance(children, list) or len(children) != 2:
            raise CertificateFormatError(f"node {path}: amalgam needs exactly 2 children")
        return Amalgam(
            subject=_vertex_list(obj["subject"], f"node {path} subject"),
            x1=_vertex_list(obj["x1"], f"node {path} x1"),
            x2=_vertex_list(obj["x2"], f"node {path} x2"),
            x0=_vertex_list(obj["x0"], f"node {path} x0"),
            witness1=_witness_from_obj(obj["witness1"], f"node {path} witness1"),
            witness2=_witness_from_obj(obj["witness2"], f"node {path} witness2"),
            child1=_node_from_obj(children[0], f"{path}.0"),
            child2=_node_from_obj(children[1], f"{path}.1"),
        )
    raise CertificateFormatError(f"node {path}: unknown node kind {kind!r}")


def parse_certificate(text: str) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CertificateFormatError("top level must be an object")
    _expect_keys(doc, {"format", "version", "root"}, "certificate document")
    if doc["format"] != FORMAT_NAME:
        raise CertificateFormatError(f"unknown format {doc['format']!r}")
    if doc["version"] != FORMAT_VERSION:
        raise CertificateFormatError(f"unsupported version {doc['version']!r}")
    return _node_from_obj(doc["root"], "root")


def save_certificate(cert: Certificate, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_certificate(cert))


def load_certificate(path) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        return parse_certificate(fh.read())
