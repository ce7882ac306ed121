from .losses import (
    SynthLossBundle,
    SynthLossWeights,
    compose_stage1_total,
    patch_bce,
    stage1_losses,
)
from .networks import (
    ADAIN_EPS,
    AdaINResBlock,
    DecoderGD,
    EncoderGE,
    MarkovianDiscriminator,
    StyleMapper,
    StyleParams,
    SynthesisArch,
    SynthesisModel,
    adain,
)

__all__ = [
    "ADAIN_EPS",
    "AdaINResBlock",
    "DecoderGD",
    "EncoderGE",
    "MarkovianDiscriminator",
    "StyleMapper",
    "StyleParams",
    "SynthesisArch",
    "SynthesisModel",
    "SynthLossBundle",
    "SynthLossWeights",
    "adain",
    "compose_stage1_total",
    "patch_bce",
    "stage1_losses",
]
