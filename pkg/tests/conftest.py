import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from para.dictionary import SymbolDictionary
from para.parser import parse_proto

MICE_CATS_TEXT = "forall Animal.x forall Animal.y (Mouse(x) & Cat(y) -> Hate(x,y))"

# the bare constant and the binder share the default sort, so the premises
# mean the same thing through every entry path (library, CLI, HTTP)
SOCRATES_PREMISES = [
    "Man(socrates)",
    "forall Thing.x (Man(x) -> Mortal(x))",
]

BARBER_TEXT = "exists Human.x (Man(x) & forall Human.y (Man(y) -> (Shaves(x,y) <-> ~Shaves(y,y))))"


@pytest.fixture
def mice_cats():
    """(dictionary, formula) for the mice-hate-cats sentence."""
    d = SymbolDictionary()
    f = parse_proto(MICE_CATS_TEXT, d)
    return d, f


@pytest.fixture
def socrates():
    """(dictionary, premises, goal) for the mortality syllogism."""
    d = SymbolDictionary()
    premises = [parse_proto(text, d) for text in SOCRATES_PREMISES]
    goal = parse_proto("Mortal(socrates)", d)
    return d, premises, goal


@pytest.fixture
def barber():
    """(dictionary, sentence) for the barber sentence."""
    d = SymbolDictionary()
    return d, parse_proto(BARBER_TEXT, d)
