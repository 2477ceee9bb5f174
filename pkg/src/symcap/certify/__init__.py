"""Embedding certificates: rules, builders, verification, known values."""

from .builders import (
    PackCertificate,
    build_fullfill2,
    build_lambdatrick,
    build_olga2,
    build_olga3,
    build_olga4,
    build_pack,
    verify_pack_certificate,
)
from .known import (
    KnownValue,
    StabilityBounds,
    beta_constant,
    f_bounds,
    f_known,
    fullfill_hypothesis_bound,
    g_known,
    stability_bounds,
)
from .rules import (
    M2,
    AxiomLambda35,
    AxiomMSg2,
    AxiomMSsqrt,
    AxiomTwoA1,
    BallPack4D,
    EmbeddingCertificate,
    EmbeddingStep,
    Inclusion,
    Permute,
    Rescale,
    Suspend,
    concat_certificates,
    identity_certificate,
    multiset_equal,
    rescale_certificate,
    suspend_step,
)
from .serialize import (
    certificate_from_doc,
    certificate_from_json,
    certificate_to_doc,
    certificate_to_json,
    pack_to_doc,
    pack_to_json,
)
from .verify import VerificationResult, verify_certificate

__all__ = [
    "M2",
    "AxiomLambda35",
    "AxiomMSg2",
    "AxiomMSsqrt",
    "AxiomTwoA1",
    "BallPack4D",
    "EmbeddingCertificate",
    "EmbeddingStep",
    "Inclusion",
    "KnownValue",
    "PackCertificate",
    "Permute",
    "Rescale",
    "StabilityBounds",
    "Suspend",
    "VerificationResult",
    "beta_constant",
    "build_fullfill2",
    "build_lambdatrick",
    "build_olga2",
    "build_olga3",
    "build_olga4",
    "build_pack",
    "certificate_from_doc",
    "certificate_from_json",
    "certificate_to_doc",
    "certificate_to_json",
    "concat_certificates",
    "f_bounds",
    "f_known",
    "fullfill_hypothesis_bound",
    "g_known",
    "identity_certificate",
    "multiset_equal",
    "pack_to_doc",
    "pack_to_json",
    "rescale_certificate",
    "stability_bounds",
    "suspend_step",
    "verify_certificate",
    "verify_pack_certificate",
]
