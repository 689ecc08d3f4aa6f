"""The sentence corpus: formalized sentences plus their shared dictionary.

The n-th sentence ever added receives the sentence-class code 2n+5; codes
count every add, so a deleted sentence's code is never reassigned.  The
durable form of a sentence is its surface text; formulas are re-parsed on
load.
"""

import json
import os
from dataclasses import dataclass

from .dictionary import DOCUMENT_VERSION, SENTENCE_TEXT, SymbolDictionary, code_for, export_dict, import_dict
from .errors import CorpusError, ParaError
from .parser import parse_proto


@dataclass(frozen=True)
class Sentence:
    text_code: int
    source_text: str
    formula: object


class Corpus:
    def __init__(self, dictionary=None):
        self.dictionary = dictionary if dictionary is not None else SymbolDictionary()
        self.sentences = []
        self._added = 0  # adds ever, deletions included

    def add_sentence(self, proto_text, default_sort=None):
        """Parse, register new symbols, append; returns the sentence code.

        A failed parse leaves both the dictionary and the sentence list
        exactly as they were.
        """
        kwargs = {} if default_sort is None else {"default_sort": default_sort}
        formula = parse_proto(proto_text, self.dictionary, **kwargs)
        self._added += 1
        code = code_for(SENTENCE_TEXT, self._added)
        self.sentences.append(Sentence(code, proto_text, formula))
        return code

    def delete_sentence(self, text_code):
        for i, sentence in enumerate(self.sentences):
            if sentence.text_code == text_code:
                del self.sentences[i]
                return
        raise CorpusError(f"no sentence with code {text_code}")

    def get(self, text_code):
        for sentence in self.sentences:
            if sentence.text_code == text_code:
                return sentence
        raise CorpusError(f"no sentence with code {text_code}")

    def __eq__(self, other):
        if not isinstance(other, Corpus):
            return NotImplemented
        return (
            self.dictionary == other.dictionary
            and [(s.text_code, s.source_text, s.formula) for s in self.sentences]
            == [(s.text_code, s.source_text, s.formula) for s in other.sentences]
        )

    def __repr__(self):
        return f"Corpus({len(self.sentences)} sentences, {self.dictionary!r})"


def to_document(corpus):
    return {
        "version": DOCUMENT_VERSION,
        "dictionary": export_dict(corpus.dictionary),
        "sentences": [
            {"code": s.text_code, "source_text": s.source_text} for s in corpus.sentences
        ],
    }


def from_document(doc):
    if not isinstance(doc, dict):
        raise CorpusError("corpus document must be a JSON object")
    if doc.get("version") != DOCUMENT_VERSION:
        raise CorpusError(f"unsupported corpus version {doc.get('version')!r}")
    corpus = Corpus(import_dict(doc.get("dictionary", {"version": DOCUMENT_VERSION})))
    previous = 5  # codes start above the last non-sentence odd terminal span
    for entry in doc.get("sentences", []):
        code = entry.get("code")
        if not isinstance(code, int) or code < 7 or code % 2 == 0:
            raise CorpusError(f"sentence codes are odd integers >= 7, got {code!r}")
        if code <= previous:
            raise CorpusError(f"sentence codes must increase strictly: {code} after {previous}")
        previous = code
        text = entry.get("source_text")
        if not isinstance(text, str):
            raise CorpusError("sentences carry their source_text")
        try:
            formula = parse_proto(text, corpus.dictionary, auto_register=False)
        except ParaError as exc:
            raise CorpusError(f"sentence {code} no longer parses: {exc}") from None
        corpus.sentences.append(Sentence(code, text, formula))
    corpus._added = (previous - 5) // 2
    return corpus


def save(corpus, path):
    """Write atomically: the file either keeps its old bytes or is replaced."""
    data = json.dumps(to_document(corpus), indent=2, ensure_ascii=False) + "\n"
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(data)
    os.replace(tmp, path)


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise CorpusError(f"no corpus file at {path}") from None
    except json.JSONDecodeError as exc:
        raise CorpusError(f"corpus file is not valid JSON: {exc}") from None
    return from_document(doc)
