"""Stage-1 training objectives: image/content reconstruction, cycle
consistency, and the patch-level adversarial pair."""

from __future__ import annotations

from dataclasses import dataclass

import torch
import torch.nn.functional as F

from ..data_io import DomainLabel
from ..errors import TrainingError
from .networks import SynthesisModel


@dataclass
class SynthLossWeights:
    rec_im: float = 20.0
    rec_c: float = 1.0
    cyc: float = 20.0
    adv: float = 1.0


@dataclass
class SynthLossBundle:
    """Stage-1 loss terms. Generator terms keep their autograd graph; adv_d
    is built on detached fakes for the discriminator step."""

    rec_im: torch.Tensor
    rec_c: torch.Tensor
    cyc: torch.Tensor
    adv_g: torch.Tensor
    adv_d: torch.Tensor
    total_g: torch.Tensor

    def to_floats(self) -> dict[str, float]:
        return {
            "rec_im": float(self.rec_im),
            "rec_c": float(self.rec_c),
            "cyc": float(self.cyc),
            "adv_g": float(self.adv_g),
            "adv_d": float(self.adv_d),
            "total_g": float(self.total_g),
        }

    def assert_finite(self, iteration: int | None = None) -> None:
        for term, value in self.to_floats().items():
            if not torch.isfinite(torch.tensor(value)):
                raise TrainingError(
                    f"non-finite stage-1 loss term {term!r}"
                    + (f" at iteration {iteration}" if iteration is not None else ""),
                    iteration=iteration,
                    term=term,
                )


def patch_bce(scores: torch.Tensor, label: float) -> torch.Tensor:
    """Binary cross-entropy of logistic-squashed raw patch scores."""
    return F.binary_cross_entropy_with_logits(scores, torch.full_like(scores, label))


def compose_stage1_total(
    rec_im: torch.Tensor, rec_c: torch.Tensor, cyc: torch.Tensor, adv_g: torch.Tensor,
    weights: SynthLossWeights,
) -> torch.Tensor:
    return (
        weights.rec_im * rec_im
        + weights.rec_c * rec_c
        + weights.cyc * cyc
        + weights.adv * adv_g
    )


def stage1_losses(
    model: SynthesisModel,
    x_s: torch.Tensor,
    x_t: torch.Tensor,
    weights: SynthLossWeights,
) -> SynthLossBundle:
    """All stage-1 terms for one (source batch, target batch) pair.

    Discriminator convention: real images of a domain are class 1, generated
    images class 0; the generator term scores fakes as real.
    """
    src, tgt = DomainLabel.SOURCE, DomainLabel.TARGET

    c_s = model.encode(x_s, src)
    c_t = model.encode(x_t, tgt)
    x_ss = model.decode(c_s, src)
    x_tt = model.decode(c_t, tgt)
    x_st = model.decode(c_s, tgt)
    x_ts = model.decode(c_t, src)

    rec_im = 0.5 * (F.l1_loss(x_ss, x_s) + F.l1_loss(x_tt, x_t))

    c_st = model.encode(x_st, tgt)
    c_ts = model.encode(x_ts, src)
    rec_c = 0.5 * (F.l1_loss(c_st, c_s) + F.l1_loss(c_ts, c_t))

    x_sts = model.decode(c_st, src)
    x_tst = model.decode(c_ts, tgt)
    cyc = 0.5 * (F.l1_loss(x_sts, x_s) + F.l1_loss(x_tst, x_t))

    adv_g = 0.5 * (
        patch_bce(model.discriminate_image(x_st, tgt), 1.0)
        + patch_bce(model.discriminate_image(x_ts, src), 1.0)
    )
    adv_d = 0.5 * (
        0.5 * (
            patch_bce(model.discriminate_image(x_t, tgt), 1.0)
            + patch_bce(model.discriminate_image(x_st.detach(), tgt), 0.0)
        )
        + 0.5 * (
            patch_bce(model.discriminate_image(x_s, src), 1.0)
            + patch_bce(model.discriminate_image(x_ts.detach(), src), 0.0)
        )
    )

    total_g = compose_stage1_total(rec_im, rec_c, cyc, adv_g, weights)
    return SynthLossBundle(
        rec_im=rec_im, rec_c=rec_c, cyc=cyc, adv_g=adv_g, adv_d=adv_d, total_g=total_g
    )
