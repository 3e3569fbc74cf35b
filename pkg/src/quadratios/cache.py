"""Persistent L-value cache: append-only text file, one record per line.

Doubles are stored as hex floats so a round trip is bit-exact; duplicate keys
resolve to the record with the smaller error estimate.  The cache is a pure
memo: values read back are the same bits a fresh computation would produce.
"""

from __future__ import annotations

import os

from .lfunc import LValueRecord

FORMAT_VERSION = 1
_QUANT = 1e12  # s quantized to 1e-12 for the lookup key


def _skey(s: complex) -> tuple[int, int]:
    s = complex(s)
    return (round(s.real * _QUANT), round(s.imag * _QUANT))


def record_key(family: str, modulus: int, s: complex) -> tuple:
    return (family, int(modulus), _skey(s))


class CacheVersionError(ValueError):
    pass


class LValueCache:
    def __init__(self, path: str | None):
        self.path = path
        self._store: dict[tuple, LValueRecord] = {}
        self._pending: list[LValueRecord] = []
        if path and os.path.exists(path):
            self._load()

    def __len__(self) -> int:
        return len(self._store)

    def _load(self) -> None:
        with open(self.path) as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                rec = self._parse(line)
                self._accept(rec)

    @staticmethod
    def _parse(line: str) -> LValueRecord:
        kv = dict(tok.split("=", 1) for tok in line.split())
        if int(kv["version"]) != FORMAT_VERSION:
            raise CacheVersionError(f"cache record version {kv['version']} != {FORMAT_VERSION}")
        return LValueRecord(
            family=kv["family"],
            modulus=int(kv["modulus"]),
            s=complex(float.fromhex(kv["s_re"]), float.fromhex(kv["s_im"])),
            value=complex(float.fromhex(kv["val_re"]), float.fromhex(kv["val_im"])),
            method=kv["method"],
            err_est=float(kv["err_est"]),
        )

    @staticmethod
    def _format(rec: LValueRecord) -> str:
        s = complex(rec.s)
        v = complex(rec.value)
        return (
            f"family={rec.family} modulus={rec.modulus} "
            f"s_re={s.real.hex()} s_im={s.imag.hex()} "
            f"val_re={v.real.hex()} val_im={v.imag.hex()} "
            f"method={rec.method} err_est={rec.err_est:.3e} version={FORMAT_VERSION}"
        )

    def _accept(self, rec: LValueRecord) -> bool:
        key = record_key(rec.family, rec.modulus, rec.s)
        old = self._store.get(key)
        if old is None or rec.err_est < old.err_est:
            self._store[key] = rec
            return True
        return False

    def get(self, family: str, modulus: int, s: complex) -> LValueRecord | None:
        return self._store.get(record_key(family, modulus, s))

    def put(self, rec: LValueRecord) -> None:
        if self._accept(rec):
            self._pending.append(rec)

    def flush(self) -> None:
        if not self.path or not self._pending:
            self._pending.clear() if not self.path else None
            return
        new_file = not os.path.exists(self.path)
        with open(self.path, "a") as f:
            if new_file:
                f.write(f"# quadratios L-value cache, format version {FORMAT_VERSION}\n")
            for rec in self._pending:
                f.write(self._format(rec) + "\n")
            f.flush()
            os.fsync(f.fileno())
        self._pending.clear()
