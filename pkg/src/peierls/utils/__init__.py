"""
Additional utilities
"""
import hashlib
import os
import tempfile
from typing import Union


def digest(data: Union[str, bytes]) -> str:
    """ The hex sha256 digest of the passed in data """
    if isinstance(data, str):
        data = data.encode("utf-8")

    return hashlib.sha256(data).hexdigest()


def atomic_write(path: str, text: str):
    """
    Write text to path atomically: the content goes to a temporary file in the
    same directory which then replaces the destination.
    """
    directory = os.path.dirname(os.path.abspath(path))
    handle, temp_path = tempfile.mkstemp(dir=directory, prefix=".peierls-")
    try:
        with os.fdopen(handle, "wt", newline="") as file:
            file.write(text)
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise
