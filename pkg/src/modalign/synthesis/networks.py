"""Style-transfer subnet: shared encoder/decoder conditioned on the domain
label through adaptive instance normalization, a domain-label MLP producing
the per-site (gamma, beta) style parameters, and a Markovian patch
discriminator conditioned on the domain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import torch
import torch.nn as nn
import torch.nn.functional as F

from ..data_io import DomainLabel
from ..errors import ConfigError

ADAIN_EPS = 1e-5


def adain(x: torch.Tensor, gamma: torch.Tensor, beta: torch.Tensor) -> torch.Tensor:
    """Adaptive instance normalization with population (biased) statistics.

    Per (sample, channel): gamma * (x - mu) / (sigma + eps) + beta, with mu
    and sigma over that channel's spatial extent. gamma/beta are length-C
    vectors shared across the batch.
    """
    if gamma.numel() != x.shape[1] or beta.numel() != x.shape[1]:
        raise ConfigError(
            f"adain: gamma/beta length {gamma.numel()}/{beta.numel()} "
            f"!= channel count {x.shape[1]}"
        )
    mu = x.mean(dim=(2, 3), keepdim=True)
    sigma = x.var(dim=(2, 3), unbiased=False, keepdim=True).sqrt()
    g = gamma.view(1, -1, 1, 1)
    b = beta.view(1, -1, 1, 1)
    return g * (x - mu) / (sigma + ADAIN_EPS) + b


@dataclass
class StyleParams:
    """One (gamma, beta) pair per adaptive-normalization site, in network order."""

    pairs: list[tuple[torch.Tensor, torch.Tensor]]

    def validate_against(self, site_channels: list[int]) -> None:
        if len(self.pairs) != len(site_channels):
            raise ConfigError(
                f"StyleParams has {len(self.pairs)} pairs, network has "
                f"{len(site_channels)} adain sites"
            )
        for i, ((g, b), ch) in enumerate(zip(self.pairs, site_channels)):
            if g.numel() != ch or b.numel() != ch:
                raise ConfigError(f"StyleParams pair {i}: length mismatch with site ({ch} ch)")


@dataclass
class SynthesisArch:
    """Size knobs for the style-transfer subnet. Defaults are the production
    setting; tests and the desk benchmark scale these down."""

    in_channels: int = 1
    base_channels: int = 32
    n_downsample: int = 3
    n_res_blocks: int = 4
    style_hidden: int = 64
    disc_base_channels: int = 32
    disc_layers: int = 4
    stem_kernel: int = 7
    max_channels: int = 256

    def content_channels(self) -> int:
        return min(self.base_channels * 2**self.n_downsample, self.max_channels)


def _init_weights(module: nn.Module) -> None:
    if isinstance(module, (nn.Conv2d, nn.Linear)):
        nn.init.normal_(module.weight, 0.0, 0.02)
        if module.bias is not None:
            nn.init.zeros_(module.bias)


class AdaINResBlock(nn.Module):
    """Residual block whose two normalization sites take external style params."""

    def __init__(self, channels: int):
        super().__init__()
        self.conv1 = nn.Conv2d(channels, channels, 3, 1, 1, padding_mode="reflect")
        self.conv2 = nn.Conv2d(channels, channels, 3, 1, 1, padding_mode="reflect")

    def forward(self, x, params):
        (g1, b1), (g2, b2) = params
        h = F.relu(adain(self.conv1(x), g1, b1))
        h = adain(self.conv2(h), g2, b2)
        return x + h


class EncoderGE(nn.Module):
    """Content encoder: stem + stride-2 conv blocks + adain residual blocks."""

    def __init__(self, arch: SynthesisArch):
        super().__init__()
        self.arch = arch
        ch = arch.base_channels
        k = arch.stem_kernel
        self.stem = nn.Sequential(
            nn.Conv2d(arch.in_channels, ch, k, 1, k // 2, padding_mode="reflect"),
            nn.InstanceNorm2d(ch),
            nn.ReLU(inplace=True),
        )
        downs = []
        for _ in range(arch.n_downsample):
            nxt = min(ch * 2, arch.max_channels)
            downs += [
                nn.Conv2d(ch, nxt, 4, 2, 1),
                nn.InstanceNorm2d(nxt),
                nn.ReLU(inplace=True),
            ]
            ch = nxt
        self.down = nn.Sequential(*downs)
        self.res = nn.ModuleList(AdaINResBlock(ch) for _ in range(arch.n_res_blocks))
        self.out_channels = ch

    def site_channels(self) -> list[int]:
        return [self.out_channels] * (2 * len(self.res))

    def forward(self, x, style_pairs):
        h = self.down(self.stem(x))
        for i, block in enumerate(self.res):
            h = block(h, style_pairs[2 * i : 2 * i + 2])
        return h


class DecoderGD(nn.Module):
    """Mirror of the encoder: adain residual blocks, then nearest-neighbor
    upsampling conv blocks, then a tanh-bounded output conv."""

    def __init__(self, arch: SynthesisArch):
        super().__init__()
        self.arch = arch
        ch = arch.content_channels()
        self.res = nn.ModuleList(AdaINResBlock(ch) for _ in range(arch.n_res_blocks))
        ups = []
        for _ in range(arch.n_downsample):
            nxt = max(ch // 2, arch.base_channels)
            ups += [
                nn.Upsample(scale_factor=2, mode="nearest"),
                nn.Conv2d(ch, nxt, 3, 1, 1, padding_mode="reflect"),
                nn.InstanceNorm2d(nxt),
                nn.ReLU(inplace=True),
            ]
            ch = nxt
        self.up = nn.Sequential(*ups)
        k = arch.stem_kernel
        self.out_conv = nn.Conv2d(ch, arch.in_channels, k, 1, k // 2, padding_mode="reflect")
        self.in_channels = arch.content_channels()

    def site_channels(self) -> list[int]:
        return [self.in_channels] * (2 * len(self.res))

    def forward(self, c, style_pairs):
        h = c
        for i, block in enumerate(self.res):
            h = block(h, style_pairs[2 * i : 2 * i + 2])
        return torch.tanh(self.out_conv(self.up(h)))


class StyleMapper(nn.Module):
    """MLP from the one-hot domain label to all adain (gamma, beta) vectors.

    gamma is parameterized as 1 + raw output so a fresh mapper starts near
    the identity transform instead of crushing activations.
    """

    def __init__(self, site_channels: list[int], hidden: int):
        super().__init__()
        self.site_channels = list(site_channels)
        total = 2 * sum(site_channels)
        self.net = nn.Sequential(
            nn.Linear(2, hidden),
            nn.ReLU(inplace=True),
            nn.Linear(hidden, hidden),
            nn.ReLU(inplace=True),
            nn.Linear(hidden, total),
        )

    def forward(self, one_hot: torch.Tensor) -> StyleParams:
        flat = self.net(one_hot)
        pairs = []
        offset = 0
        for ch in self.site_channels:
            gamma = 1.0 + flat[offset : offset + ch]
            beta = flat[offset + ch : offset + 2 * ch]
            pairs.append((gamma, beta))
            offset += 2 * ch
        return StyleParams(pairs=pairs)


class MarkovianDiscriminator(nn.Module):
    """Patch classifier over (image, one-hot domain planes); emits a raw
    realness score per patch location."""

    def __init__(self, arch: SynthesisArch):
        super().__init__()
        ch = arch.disc_base_channels
        layers = [
            nn.Conv2d(arch.in_channels + 2, ch, 4, 2, 1),
            nn.LeakyReLU(0.2, inplace=True),
        ]
        for _ in range(arch.disc_layers - 1):
            nxt = min(ch * 2, arch.max_channels)
            layers += [
                nn.Conv2d(ch, nxt, 4, 2, 1),
                nn.InstanceNorm2d(nxt),
                nn.LeakyReLU(0.2, inplace=True),
            ]
            ch = nxt
        layers.append(nn.Conv2d(ch, 1, 3, 1, 1))
        self.net = nn.Sequential(*layers)

    def forward(self, x: torch.Tensor, one_hot: torch.Tensor) -> torch.Tensor:
        planes = one_hot.view(1, 2, 1, 1).expand(x.shape[0], 2, x.shape[2], x.shape[3])
        return self.net(torch.cat([x, planes.to(x.dtype)], dim=1))


def _as_one_hot(d, ref: torch.Tensor) -> torch.Tensor:
    if isinstance(d, DomainLabel):
        one_hot = torch.zeros(2, dtype=ref.dtype, device=ref.device)
        one_hot[d.value] = 1.0
        return one_hot
    return d.to(ref.dtype)


class SynthesisModel(nn.Module):
    """Encoder, decoder, style mapper and image discriminator as one unit."""

    def __init__(self, arch: SynthesisArch):
        super().__init__()
        self.arch = arch
        self.encoder = EncoderGE(arch)
        self.decoder = DecoderGD(arch)
        self.n_enc_sites = len(self.encoder.site_channels())
        sites = self.encoder.site_channels() + self.decoder.site_channels()
        self.mapper = StyleMapper(sites, arch.style_hidden)
        self.disc = MarkovianDiscriminator(arch)
        self.apply(_init_weights)

    def generator_parameters(self):
        for m in (self.encoder, self.decoder, self.mapper):
            yield from m.parameters()

    def style_params(self, d) -> StyleParams:
        ref = next(self.mapper.parameters())
        return self.mapper(_as_one_hot(d, ref))

    def encode(self, x: torch.Tensor, d) -> torch.Tensor:
        params = self.style_params(d)
        return self.encoder(x, params.pairs[: self.n_enc_sites])

    def decode(self, c: torch.Tensor, d) -> torch.Tensor:
        params = self.style_params(d)
        return self.decoder(c, params.pairs[self.n_enc_sites :])

    def translate(self, x: torch.Tensor, d_src, d_tgt) -> torch.Tensor:
        return self.decode(self.encode(x, d_src), d_tgt)

    def discriminate_image(self, x: torch.Tensor, d) -> torch.Tensor:
        ref = next(self.disc.parameters())
        return self.disc(x, _as_one_hot(d, ref))
