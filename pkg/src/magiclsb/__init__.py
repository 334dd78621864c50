"""Grayscale image steganography with keyed bit shuffling and magic-square LSB embedding."""

__version__ = "0.1.0"

from .bitcrypt import bits_to_bytes, bytes_to_bits, pbsa_decrypt, pbsa_encrypt, reverse_each_byte, xor_with_key
from .errors import *  # noqa: F401,F403
from .image_io import load_pgm, read_pgm, save_pgm, synth_image, write_pgm
from .magic_square import MagicSquare, build_magic, position_of, validate_magic
from .metrics import PsnrReport, mse, psnr
from .stego import (
    EmbedPlan,
    StegoResult,
    capacity,
    embed,
    embed_stream,
    extract,
    extract_stream,
    lsb_sequential_embed,
    lsb_sequential_extract,
    make_plan,
)
