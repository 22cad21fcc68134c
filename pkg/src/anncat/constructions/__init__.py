"""Transport, strictification, End(A) and the embedding into an almost strict category."""

from .embed import Embedding, LambdaResult, build_lambda, check_cxx_condition, check_faithful, embed_almost_strict
from .end import EndCat, EndCategory, EndMor, EndObject, build_end, enumerate_end, strictness_table, \
    verify_end_almost_strict
from .equivalence import Equivalence, check_equivalence, identity_equivalence, inflate, transfer_structure
from .strict import Strictification, WordCategory, base_strictness, strictify_plus, strictness_report

__all__ = [
    "Embedding", "LambdaResult", "build_lambda", "check_cxx_condition", "check_faithful", "embed_almost_strict",
    "EndCat", "EndCategory", "EndMor", "EndObject", "build_end", "enumerate_end", "strictness_table",
    "verify_end_almost_strict", "Equivalence", "check_equivalence", "identity_equivalence", "inflate",
    "transfer_structure", "Strictification", "WordCategory", "base_strictness", "strictify_plus",
    "strictness_report",
]
