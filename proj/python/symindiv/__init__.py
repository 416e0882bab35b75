"""Countable structures, embeddings and symmetric-indivisibility experiments."""

from ._symindiv import (
    Error,
    Exhausted,
    InvalidInput,
    NotAnEncoding,
    SignatureMismatch,
    Structure,
    back_and_forth,
    canonical,
    color_of,
    decode_graph,
    decode_order,
    eval,
    gamma_star_obstruction,
    greedy_embedding,
    monochromatic_copy,
    reduct_demo,
    transfer_rado_parity,
    verify,
)

RED = 0
BLUE = 1

__all__ = [
    "BLUE",
    "RED",
    "Error",
    "Exhausted",
    "InvalidInput",
    "NotAnEncoding",
    "SignatureMismatch",
    "Structure",
    "back_and_forth",
    "canonical",
    "color_of",
    "decode_graph",
    "decode_order",
    "eval",
    "gamma_star_obstruction",
    "greedy_embedding",
    "monochromatic_copy",
    "reduct_demo",
    "transfer_rado_parity",
    "verify",
]
