"""
Classes defined in this module are responsible for loading data
from files: edge lists, update streams and the optional settings file.
"""

import logging
import os
from abc import ABC, abstractmethod
from dataclasses import dataclass
from json import load
from typing import (
    BinaryIO,
    Iterable,
    TypedDict,
    get_args,
    get_origin,
    get_type_hints,
)

from egobw.errors import GraphFormatError, ParameterError
from egobw.graph import MAX_ORIGINAL_ID, Graph

SETTINGS_FILE_NAME = "egobw_settings.json"


class SettingsDict(TypedDict):
    """
    Schema for the settings dictionary loaded from egobw_settings.json
    """

    theta: float
    vertex_chunk_size: int
    edge_chunk_size: int
    brandes_limit: int
    score_digits: int
    verify_trials: int
    verify_max_n: int
    verify_seed: int
    bench_ks: list[int]
    bench_thetas: list[float]


DEFAULT_SETTINGS = SettingsDict(
    theta=1.05,
    vertex_chunk_size=64,
    edge_chunk_size=1024,
    brandes_limit=10000,
    score_digits=12,
    verify_trials=100,
    verify_max_n=64,
    verify_seed=42,
    bench_ks=[1, 5, 10],
    bench_thetas=[1.0, 1.05, 1.3],
)


def _is_number(value, kind: type) -> bool:
    if isinstance(value, bool):
        return False
    return isinstance(value, int) if kind is int else isinstance(value, (int, float))


def check_setting(key: str, value):
    """
    Check a settings value against its SettingsDict annotation.

    :raises ParameterError: If the value has the wrong type.
    """
    hint = get_type_hints(SettingsDict)[key]
    if get_origin(hint) is list:
        (kind,) = get_args(hint)
        valid = isinstance(value, list) and all(_is_number(v, kind) for v in value)
        expected = f"a list of {kind.__name__} values"
    else:
        valid = _is_number(value, hint)
        expected = "an integer" if hint is int else "a number"
    if not valid:
        raise ParameterError(f"setting {key!r} must be {expected}, got {value!r}")


@dataclass(frozen=True)
class UpdateOp:
    """
    One line of an update stream. ``u`` and ``v`` are original vertex IDs.
    """

    op: str
    u: int
    v: int
    line_no: int

    @property
    def is_insert(self) -> bool:
        return self.op == "+"

    def echo(self) -> str:
        """
        The op as it appeared in the stream, prefixed for report output.
        """
        return f"# {self.op} {self.u} {self.v}"


def _parse_vertex_id(token: str, line_no: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(f"non-integer token {token!r}", line_no) from None
    if value < 0 or value > MAX_ORIGINAL_ID:
        raise GraphFormatError(f"vertex id {value} out of range", line_no)
    return value


def _content_lines(lines: Iterable[bytes]) -> Iterable[tuple[int, list[str]]]:
    """
    Yield (line number, tokens) for every line that is neither blank nor a comment.
    """
    for line_no, raw in enumerate(lines, start=1):
        try:
            text = raw.decode("utf-8").strip()
        except UnicodeDecodeError:
            raise GraphFormatError("line is not valid UTF-8", line_no) from None
        if not text or text.startswith("#"):
            continue
        yield line_no, text.split()


def parse_edges(source: BinaryIO) -> Iterable[tuple[int, int]]:
    """
    Yield edges of original IDs from an edge-list byte stream.
    """
    for line_no, tokens in _content_lines(source):
        if len(tokens) != 2:
            raise GraphFormatError(
                f"expected two vertex ids, found {len(tokens)} tokens", line_no
            )
        yield _parse_vertex_id(tokens[0], line_no), _parse_vertex_id(
            tokens[1], line_no
        )


def load_edge_list(source: BinaryIO) -> Graph:
    """
    Read an edge list from a byte stream and build a Graph.

    Original IDs are remapped to dense internal IDs in order of first
    appearance. Self-loops and repeated edges are dropped and reported with a
    single warning.

    :param source: Binary stream of text lines, two integer tokens per edge.
    :raises GraphFormatError: On a malformed line or when no vertex is found.
    """
    g = Graph.from_edges(parse_edges(source))
    if g.n == 0:
        raise GraphFormatError("edge list contains no vertices")
    if g.ingest.self_loops or g.ingest.duplicates:
        logging.warning(
            "Dropped %d self-loop(s) and %d duplicate edge(s)",
            g.ingest.self_loops,
            g.ingest.duplicates,
        )
    return g


def parse_update_stream(source: BinaryIO) -> Iterable[UpdateOp]:
    """
    Yield UpdateOp records from an update-stream byte stream. Each content
    line reads ``+ u v`` (insert) or ``- u v`` (delete).
    """
    for line_no, tokens in _content_lines(source):
        if len(tokens) != 3 or tokens[0] not in ("+", "-"):
            raise GraphFormatError("expected '+ u v' or '- u v'", line_no)
        yield UpdateOp(
            tokens[0],
            _parse_vertex_id(tokens[1], line_no),
            _parse_vertex_id(tokens[2], line_no),
            line_no,
        )


class DataLoader(ABC):
    """
    Abstract base class for loading data from files.
    """

    def __init__(self, src_path: str):
        """
        Initializes the DataLoader with a specified path to the data
        """
        self.src_path = src_path

    @abstractmethod
    def load(self):
        """
        Load data from the specified file path.
        This method must be implemented by subclasses.
        """


class EdgeListLoader(DataLoader):
    """
    Loads a graph from an edge-list file.
    """

    def _log_info(self):
        """
        Prints a status message that the edge list is being read
        """
        logging.info("\033[94mReading edge list %s...\033[0m", self.src_path)

    def load(self) -> Graph:
        self._log_info()
        with open(self.src_path, "rb") as edge_file:
            g = load_edge_list(edge_file)
        logging.info("\033[94mLoaded graph with n=%d, m=%d\033[0m", g.n, g.m)
        return g


class UpdateStreamLoader(DataLoader):
    """
    Loads the operations of an update-stream file.
    """

    def load(self) -> list[UpdateOp]:
        """
        Parse the whole stream eagerly so format errors surface before any
        update is applied.
        """
        logging.info("\033[94mReading update stream %s...\033[0m", self.src_path)
        with open(self.src_path, "rb") as stream_file:
            return list(parse_update_stream(stream_file))


class SettingsLoader(DataLoader):
    """
    Handles the loading of tunable settings. The settings file is optional;
    any keys it holds override the defaults.
    """

    def __init__(self, root_path: str):
        """
        :param root_path: Directory searched for egobw_settings.json.
        """
        super().__init__(src_path=os.path.join(root_path, SETTINGS_FILE_NAME))
        self._data = None
        self.root_path = root_path

    @property
    def data(self) -> SettingsDict:
        """
        The defaults merged with the loaded settings file
        """
        if self._data is None:
            merged = dict(DEFAULT_SETTINGS)
            merged.update(self.load())
            self._data = merged

        args: SettingsDict = self._data
        return args

    def _log_info(self):
        """
        Prints a status message that JSON settings are being loaded
        """
        logging.info("\033[94mLoading settings from %s...\033[0m", self.src_path)

    def load(self) -> dict:
        """
        Load the known keys of the settings file, or nothing if it is absent.

        :raises ParameterError: If a known setting has the wrong type.
        """
        if not os.path.isfile(self.src_path):
            return {}

        self._log_info()
        with open(self.src_path, "r", encoding="utf-8") as settings_file:
            settings = load(settings_file)

        if not isinstance(settings, dict):
            logging.warning("Ignoring %s: top level is not an object", self.src_path)
            return {}

        unknown = sorted(set(settings) - set(DEFAULT_SETTINGS))
        if unknown:
            logging.warning("Ignoring unknown settings: %s", ", ".join(unknown))
        known = {
            key: value for key, value in settings.items() if key in DEFAULT_SETTINGS
        }
        for key, value in known.items():
            check_setting(key, value)
        return known
