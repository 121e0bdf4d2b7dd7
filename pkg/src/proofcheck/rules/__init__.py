from . import guards  # noqa: F401  (registers guard and solver callbacks)
from .fmt import load_pack, load_pack_text, dump_rules, pack_path  # noqa: F401
