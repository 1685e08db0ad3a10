#!/usr/bin/env python3
"""Regenerates matched32_amplitude.pgm and matched32_phase.pgm.

The pair is the central-quadrant content of a fixed point of alternating
projections between two constraint sets: unit modulus in the hologram plane
and zero energy outside the centered quadrant in the replay plane. A target
built from the pair is therefore nearly attainable by a phase-only hologram,
which keeps its attainable error floor far below the mid-run error of a
random-walk search. Arbitrary amplitude/phase pairs do not have this
property: their floor is dominated by irreducible encoding loss, which
flattens the contrast between search algorithms.
"""

import numpy as np

FIELD = 64
QUAD = 32
SEED = 7
SWEEPS = 3000


def main() -> None:
    rng = np.random.default_rng(SEED)
    lo = (FIELD - QUAD) // 2

    amp = (1.0 + np.add.outer(np.arange(QUAD), np.arange(QUAD))) / (2 * QUAD - 1)
    phase = rng.uniform(0.0, 2 * np.pi, (QUAD, QUAD))
    replay = np.zeros((FIELD, FIELD), complex)
    replay[lo:lo + QUAD, lo:lo + QUAD] = amp * np.exp(1j * phase)

    for _ in range(SWEEPS):
        hologram = np.fft.ifft2(np.fft.ifftshift(replay), norm="ortho")
        hologram = np.exp(1j * np.angle(hologram))
        spectrum = np.fft.fftshift(np.fft.fft2(hologram, norm="ortho"))
        replay = np.zeros_like(spectrum)
        roi = spectrum[lo:lo + QUAD, lo:lo + QUAD]
        replay[lo:lo + QUAD, lo:lo + QUAD] = roi

    write_pgm16("matched32_amplitude.pgm", np.abs(roi) / np.abs(roi).max())
    write_pgm16("matched32_phase.pgm", np.mod(np.angle(roi), 2 * np.pi) / (2 * np.pi))

    leak = 1.0 - np.sum(np.abs(roi) ** 2) / (FIELD * FIELD)
    print(f"leaked energy fraction at the fixed point: {leak:.6f}")


def write_pgm16(path: str, values: np.ndarray) -> None:
    samples = np.clip(np.round(values * 65535), 0, 65535).astype(">u2")
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n65535\n" % (values.shape[1], values.shape[0]))
        f.write(samples.tobytes())


if __name__ == "__main__":
    main()
