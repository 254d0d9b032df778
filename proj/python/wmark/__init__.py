"""Block-based wavelet-domain image watermarking.

Images are 2-D numpy arrays indexed [row, column]; payloads are strings of
'0' and '1'. Detection is non-blind and needs the original image.
"""

from ._wmark import (
    Method,
    WatermarkKey,
    WmarkError,
    attacks,
    ber,
    capacity,
    corr_coeff,
    detect,
    dwt2d,
    embed,
    generate_watermark,
    idwt2d,
    load_pgm,
    psnr,
    quantize,
    save_pgm,
    select_blocks,
    threshold,
)

__all__ = [
    "Method",
    "WatermarkKey",
    "WmarkError",
    "attacks",
    "ber",
    "capacity",
    "corr_coeff",
    "detect",
    "dwt2d",
    "embed",
    "generate_watermark",
    "idwt2d",
    "load_pgm",
    "psnr",
    "quantize",
    "save_pgm",
    "select_blocks",
    "threshold",
]
