"""Regenerate the tick ladder constants embedded in ``ormer.fixedmath``.

Runs mpmath at 600 bits and prints Q128 values rounded to nearest, so the
committed integer path never touches a platform ``log``/``exp``.

    python scripts/gen_tick_constants.py
"""
import mpmath as mp

mp.mp.prec = 600
BASE = mp.mpf("1.0001")
ONE = 2**128
LADDER = 19


def q128(x):
    v = x * ONE
    f = mp.floor(v)
    return int(f) + (1 if v - f > mp.mpf(1) / 2 else 0)


def main():
    print("_INV_LADDER = (")
    for k in range(LADDER):
        print(f"    {hex(q128(BASE ** -(2**k)))},  # 1.0001^-{2**k}")
    print(")")
    print("_POW_LADDER = (")
    for k in range(LADDER):
        print(f"    {hex(q128(BASE ** (2**k)))},  # 1.0001^{2**k}")
    print(")")
    print(f"_HALF_TICK = {hex(q128(mp.sqrt(BASE)))}  # 1.0001^0.5")
    print("MAX_PRICE_TICK =", int(mp.floor(mp.log(mp.mpf(2) ** 63) / mp.log(BASE))))
    print("MIN_PRICE_TICK =", int(mp.ceil(mp.log(mp.mpf(2) ** -48) / mp.log(BASE))))


if __name__ == "__main__":
    main()
