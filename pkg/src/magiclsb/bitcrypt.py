"""Pattern based bit shuffling (PBSA) with a cyclic key XOR.

Bit streams are 1-D ``uint8`` numpy arrays holding only 0 and 1, most
significant bit first within each byte.

The cipher is an obfuscation layer. It is neither confidential nor
authenticated and must not be used where real cryptography is needed.
"""

import numpy as np

from .errors import EmptyKey, NonOctetLength

__all__ = [
    "as_bits",
    "bits_from_str",
    "bits_to_str",
    "bytes_to_bits",
    "bits_to_bytes",
    "reverse_each_byte",
    "xor_with_key",
    "pbsa_encrypt",
    "pbsa_decrypt",
]


def as_bits(bits) -> np.ndarray:
    """Coerce a sequence of 0/1 values (or a ``"0101"`` string) to a bit array."""
    if isinstance(bits, str):
        return bits_from_str(bits)
    arr = np.asarray(bits)
    if arr.ndim != 1:
        arr = arr.ravel()
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("bit streams may only contain 0 and 1")
    return arr.astype(np.uint8, copy=False)


def bits_from_str(text: str) -> np.ndarray:
    text = "".join(text.split())
    if set(text) - {"0", "1"}:
        raise ValueError(f"not a bit string: {text!r}")
    return np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")


def bits_to_str(bits) -> str:
    return "".join("1" if b else "0" for b in as_bits(bits))


def _check_octets(bits: np.ndarray) -> None:
    if bits.size % 8:
        raise NonOctetLength(f"bit stream length {bits.size} is not a multiple of 8")


def _check_key(key) -> bytes:
    key = bytes(key)
    if not key:
        raise EmptyKey("secret key must contain at least one byte")
    return key


def bytes_to_bits(data) -> np.ndarray:
    return np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))


def bits_to_bytes(bits) -> bytes:
    bits = as_bits(bits)
    _check_octets(bits)
    return np.packbits(bits).tobytes()


def reverse_each_byte(bits) -> np.ndarray:
    """Reverse the bit order inside every 8-bit block.

    This is the block-internal reading of the k <-> 9-k swap pattern, the
    only reading that is a permutation. It is its own inverse.
    """
    bits = as_bits(bits)
    _check_octets(bits)
    return bits.reshape(-1, 8)[:, ::-1].ravel().copy()


def xor_with_key(bits, key) -> np.ndarray:
    """XOR ``bits`` with the key's bit expansion, repeated cyclically."""
    key = _check_key(key)
    bits = as_bits(bits)
    key_bits = bytes_to_bits(key)
    reps = -(-bits.size // key_bits.size)
    return bits ^ np.tile(key_bits, reps)[: bits.size]


def pbsa_encrypt(message, key) -> np.ndarray:
    key = _check_key(key)
    return xor_with_key(reverse_each_byte(bytes_to_bits(message)), key)


def pbsa_decrypt(cipher, key) -> bytes:
    key = _check_key(key)
    cipher = as_bits(cipher)
    _check_octets(cipher)
    return bits_to_bytes(reverse_each_byte(xor_with_key(cipher, key)))
