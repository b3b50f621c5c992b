"""Regenerates golden_pc1024_512_crc24c.txt.

Encodes with the explicit generator matrix F^{(x)10} (mod 2) and computes
CRC-24C (0xB2B117) by polynomial long division, without sharing any code with
the Rust implementation.

    python3 gen_golden.py > golden_pc1024_512_crc24c.txt
"""

import pathlib
import random

import numpy as np

N, K, CRC_LEN, POLY = 1024, 512, 24, 0xB2B117
HERE = pathlib.Path(__file__).resolve().parent
SEQ = HERE.parent.parent / "core" / "data" / "nr_reliability_1024.txt"


def info_set():
    seq = [int(x) for x in SEQ.read_text().split()]
    return sorted(seq[N - K:])


def generator():
    f = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    g = np.array([[1]], dtype=np.uint8)
    while g.shape[0] < N:
        g = np.kron(g, f) % 2
    return g


def crc(bits):
    divisor = [1] + [(POLY >> (CRC_LEN - 1 - i)) & 1 for i in range(CRC_LEN)]
    rem = list(bits) + [0] * CRC_LEN
    for i in range(len(bits)):
        if rem[i]:
            for j, d in enumerate(divisor):
                rem[i + j] ^= d
    return rem[-CRC_LEN:]


def to_hex(bits):
    bits = list(bits) + [0] * (-len(bits) % 4)
    return "".join(
        "%x" % (bits[i] << 3 | bits[i + 1] << 2 | bits[i + 2] << 1 | bits[i + 3])
        for i in range(0, len(bits), 4)
    )


def main():
    rng = random.Random(38212)
    g = generator()
    info = info_set()
    payload_len = K - CRC_LEN
    payloads = [[0] * payload_len, [1] * payload_len]
    payloads += [[1 if i == j else 0 for i in range(payload_len)] for j in (0, payload_len - 1)]
    payloads += [[rng.randrange(2) for _ in range(payload_len)] for _ in range(28)]
    print("# PC(1024,512), information set: 512 most reliable indices of the NR sequence")
    print("# CRC-24C 0xB2B117 appended to the 488-bit message; non-systematic u.G")
    print("# bits are packed MSB-first into hex nibbles, the message zero-padded to 122 nibbles")
    print("msg_hex,codeword_hex")
    for p in payloads:
        block = p + crc(p)
        u = np.zeros(N, dtype=np.uint8)
        u[info] = block
        c = (u.astype(np.int64) @ g) % 2
        print("%s,%s" % (to_hex(p), to_hex(c)))


if __name__ == "__main__":
    main()
