"""On-disk result cache with content hashes and atomic writes.

Layout: ``<root>/gamma1_<N>/{space, op_<name>, report.json}``.  Each
payload has a ``<name>.sha256`` sidecar; reads verify the hash and
treat mismatches as a miss.  Writes go to a temp file in the same
directory followed by rename, so concurrent readers and a single
writer per key are safe.
"""

import hashlib
import os
import tempfile

_ENV_VAR = "MTORS_CACHE"
_DEFAULT_DIR = ".mtors-cache"


def resolve_cache_dir(flag_value=None):
    """Cache root from the --cache flag, else $MTORS_CACHE, else ./.mtors-cache."""
    if flag_value:
        return flag_value
    env = os.environ.get(_ENV_VAR)
    if env:
        return env
    return _DEFAULT_DIR


class Cache:
    def __init__(self, root):
        self.root = root

    def _path(self, key):
        if ".." in key or key.startswith("/"):
            raise ValueError(f"bad cache key {key!r}")
        return os.path.join(self.root, key)

    def read(self, key):
        """Payload text, or None on miss or hash mismatch."""
        path = self._path(key)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                payload = fh.read()
            with open(path + ".sha256", "r", encoding="utf-8") as fh:
                want = fh.read().strip()
        except OSError:
            return None
        if _digest(payload) != want:
            return None
        return payload

    def write(self, key, payload):
        """Atomic write-then-rename of payload plus its hash sidecar."""
        path = self._path(key)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        for target, text in ((path, payload), (path + ".sha256", _digest(payload) + "\n")):
            fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tmp-")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write(text)
                os.replace(tmp, target)
            except BaseException:
                try:
                    os.unlink(tmp)
                except OSError:
                    pass
                raise

    def has(self, key):
        return self.read(key) is not None


def _digest(payload):
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class NullCache:
    """Cache stand-in that stores nothing."""

    def read(self, key):
        return None

    def write(self, key, payload):
        pass

    def has(self, key):
        return False
