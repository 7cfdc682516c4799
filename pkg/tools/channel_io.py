"""
Channel I/O - reading channel and scheme documents

Channel documents wrap their parameters in a single key naming the kind:

    {"gaussian": {...}}       standardized Gaussian channel
    {"gaussian_raw": {...}}   raw Gaussian channel, standardized on load
    {"batw": {...}}           binary additive channel

Scheme documents carry a "scheme" object (SchemeConfig fields) and an
optional "books" object with explicit codebooks.
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

import structlog

from secrecy.channel_model import standardize, validate_batw, validate_gtw
from secrecy.secrecy_sim import build_scheme, scheme_from_books
from utils.errors import InputDocumentError
from utils.models import BatwChannel, BinaryScheme, RawGtwChannel, SchemeConfig, StandardGtwChannel

logger = structlog.get_logger()

Channel = Union[StandardGtwChannel, BatwChannel]

CHANNEL_KINDS = ("gaussian", "gaussian_raw", "batw")
BOOK_KEYS = ("secret_1", "rand_1", "secret_2", "rand_2")


def read_document(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a JSON object from disk.

    Raises:
        InputDocumentError: if the file cannot be read, is not JSON, or is not an object
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except FileNotFoundError:
        raise InputDocumentError("file not found", str(path))
    except OSError as e:
        raise InputDocumentError(f"cannot read: {e.strerror or e}", str(path))
    except UnicodeDecodeError as e:
        raise InputDocumentError(f"not UTF-8 text: {e.reason}", str(path))
    except json.JSONDecodeError as e:
        raise InputDocumentError(f"malformed JSON: {e}", str(path))

    if not isinstance(doc, dict):
        raise InputDocumentError("top level must be a JSON object", str(path))

    logger.debug("document_loaded", path=str(path), keys=sorted(doc))
    return doc


def canonical_digest(doc: Dict[str, Any]) -> str:
    """sha256 of the document with sorted keys and no whitespace."""
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def channel_kind(doc: Dict[str, Any], path: Optional[str] = None) -> str:
    kinds = [k for k in CHANNEL_KINDS if k in doc]
    if len(kinds) != 1:
        raise InputDocumentError(
            f"expected exactly one of {', '.join(CHANNEL_KINDS)}; found {kinds or 'none'}", path
        )
    return kinds[0]


def parse_channel(doc: Dict[str, Any], path: Optional[str] = None) -> Channel:
    """
    Build and validate the channel held in a document.

    Raw Gaussian channels are returned in standard form.

    Raises:
        InputDocumentError: if the document names no channel kind or more than one
        ChannelParameterError: if a parameter violates its invariant
        pydantic.ValidationError: if fields are missing or mistyped
    """
    kind = channel_kind(doc, path)
    body = doc[kind]
    if not isinstance(body, dict):
        raise InputDocumentError(f"'{kind}' must be a JSON object", path)

    if kind == "batw":
        return validate_batw(BatwChannel(**body))
    if kind == "gaussian_raw":
        return standardize(RawGtwChannel(**body))
    return validate_gtw(StandardGtwChannel(**body))


def parse_raw_channel(doc: Dict[str, Any], path: Optional[str] = None) -> RawGtwChannel:
    """Raw channel from {"gaussian_raw": {...}} or from a bare field object."""
    body = doc.get("gaussian_raw", doc)
    if not isinstance(body, dict):
        raise InputDocumentError("'gaussian_raw' must be a JSON object", path)
    return RawGtwChannel(**body)


def parse_scheme(
    doc: Dict[str, Any],
    overrides: Optional[Dict[str, Any]] = None,
    path: Optional[str] = None,
) -> BinaryScheme:
    """
    Build the scheme a document describes.

    Args:
        doc: Scheme document
        overrides: SchemeConfig fields that replace the document's (seed, budget)
        path: Source path, used in error messages

    Returns:
        Scheme with injected codebooks when "books" is present, drawn ones otherwise

    Raises:
        InputDocumentError: if "scheme" or a codebook is missing
        BudgetExceededError: if the scheme exceeds its enumeration budget
    """
    body = doc.get("scheme")
    if not isinstance(body, dict):
        raise InputDocumentError("missing 'scheme' object", path)

    fields = {**body, **{k: v for k, v in (overrides or {}).items() if v is not None}}
    config = SchemeConfig(**fields)

    books = doc.get("books")
    if books is None:
        return build_scheme(config)
    if not isinstance(books, dict):
        raise InputDocumentError("'books' must be a JSON object", path)

    missing = [k for k in BOOK_KEYS if k not in books]
    if missing:
        raise InputDocumentError(f"'books' lacks {', '.join(missing)}", path)

    logger.debug("codebooks_injected", n=config.n)
    return scheme_from_books(
        config,
        secret_books=(books["secret_1"], books["secret_2"]),
        rand_books=(books["rand_1"], books["rand_2"]),
    )


def scheme_document(config: SchemeConfig, scheme: Optional[BinaryScheme] = None) -> Dict[str, Any]:
    """Document parse_scheme reads back; the codebooks are written out when a scheme is given."""
    doc: Dict[str, Any] = {"scheme": config.model_dump()}
    if scheme is not None:
        doc["books"] = {
            "secret_1": scheme.secret_books[0],
            "rand_1": scheme.rand_books[0],
            "secret_2": scheme.secret_books[1],
            "rand_2": scheme.rand_books[1],
        }
    return doc
