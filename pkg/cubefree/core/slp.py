"""
Words and straight-line programs over abstract generators

A word is a tuple of ``(generator, exponent)`` letters. A straight-line
program (SLP) is a sequence of lines, each a word in the inputs and the
earlier lines, so shared subexpressions are evaluated once.
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Sequence, Tuple

Letter = Tuple[int, int]
Word = Tuple[Letter, ...]

EMPTY_WORD: Word = ()


def reduce_word(letters: Iterable[Letter]) -> Word:
    """Merge adjacent letters on the same generator and drop zero exponents"""
    out: List[Letter] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


def word_inverse(word: Word) -> Word:
    return tuple((gen, -exp) for gen, exp in reversed(word))


def word_concat(*words: Word) -> Word:
    return reduce_word(letter for word in words for letter in word)


def relabel_word(word: Word, mapping: Sequence[int]) -> Word:
    """Rename generator i to mapping[i]"""
    return tuple((mapping[gen], exp) for gen, exp in word)


def evaluate_word(word: Word, images: Sequence[Any], identity: Any) -> Any:
    """Evaluate a word by substituting images[i] for generator i"""
    result = identity
    for gen, exp in word:
        result = result * (images[gen] ** exp)
    return result


def word_to_json(word: Word) -> List[List[int]]:
    return [[gen, exp] for gen, exp in word]


def format_word(word: Word, names: Sequence[str] = None) -> str:
    if not word:
        return "1"
    parts = []
    for gen, exp in word:
        name = names[gen] if names else f"x{gen + 1}"
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts)


@dataclass(frozen=True)
class SLP:
    """
    Straight-line program with `inputs` input slots

    Slot ``k < inputs`` is input k; slot ``inputs + j`` is the value of
    ``lines[j]``, a word over slots smaller than itself.
    """

    inputs: int
    lines: Tuple[Word, ...]
    outputs: Tuple[int, ...]

    @property
    def slot_count(self) -> int:
        return self.inputs + len(self.lines)

    def _needed(self) -> List[int]:
        """Line slots reachable from the outputs, in increasing order"""
        seen = set()
        stack = [slot for slot in self.outputs if slot >= self.inputs]
        while stack:
            slot = stack.pop()
            if slot in seen:
                continue
            seen.add(slot)
            for gen, _ in self.lines[slot - self.inputs]:
                if gen >= self.inputs and gen not in seen:
                    stack.append(gen)
        return sorted(seen)

    def evaluate(self, images: Sequence[Any], identity: Any) -> List[Any]:
        """Evaluate every output slot with the given input images"""
        if len(images) != self.inputs:
            raise ValueError(f"SLP expects {self.inputs} inputs, got {len(images)}")
        values: Dict[int, Any] = dict(enumerate(images))
        for slot in self._needed():
            result = identity
            for gen, exp in self.lines[slot - self.inputs]:
                result = result * (values[gen] ** exp)
            values[slot] = result
        return [values[slot] for slot in self.outputs]

    def evaluate_one(self, images: Sequence[Any], identity: Any) -> Any:
        return self.evaluate(images, identity)[0]

    def with_outputs(self, outputs: Sequence[int]) -> "SLP":
        return SLP(self.inputs, self.lines, tuple(outputs))

    def append_line(self, word: Word) -> Tuple["SLP", int]:
        """Return a new program with one more line and the slot of that line"""
        slot = self.slot_count
        return SLP(self.inputs, self.lines + (word,), self.outputs), slot

    def to_dict(self) -> Dict[str, Any]:
        return {
            "inputs": self.inputs,
            "lines": [word_to_json(line) for line in self.lines],
            "outputs": list(self.outputs),
        }
