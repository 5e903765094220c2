from typing import Iterable, List, Tuple

from ..worlds import FiniteModel


def _pairs(ps: Iterable[Tuple[str, str]]) -> str:
    return ", ".join(f"{a} {b}" for a, b in sorted(ps))


def emit_model(m: FiniteModel) -> str:
    """
    Model file text. Accessibility is always written out, so the output does not
    depend on the reader's reflexivity default.
    """
    lines: List[str] = [
        f"WORLDS: {' '.join(sorted(m.worlds))}",
        f"ACTUAL: {m.actual}",
        f"REFLEXIVE: {'yes' if m.reflexive else 'no'}",
        f"ACCESSIBILITY: {_pairs(m.accessibility)}",
        f"INDIVIDUALS: {' '.join(sorted(m.domain))}",
    ]
    for (w, label), ext in sorted(m.class_ext.items()):
        lines.append(f"CLASS {w} {label}: {' '.join(sorted(ext))}")
    for (w, rel), ext in sorted(m.rel_ext.items()):
        lines.append(f"REL {w} {rel}: {_pairs(ext)}")
    for w, ext in sorted(m.context_of.items()):
        lines.append(f"CONTEXT {w}: {_pairs(ext)}")
    return "\n".join(line.rstrip() for line in lines) + "\n"
