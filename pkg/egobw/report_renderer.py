"""
This module is responsible for handling the template environment and
rendering the plain-text reports printed by the verify, compare and bench
commands
"""

import logging
import os
from typing import Iterable

from jinja2 import Environment, FileSystemLoader, StrictUndefined

# Globals
script_dir = os.path.dirname(os.path.realpath(__file__))
TEMPLATE_DIR = os.path.join(script_dir, "templates")
DEFAULT_SCORE_DIGITS = 12


def format_score(value: float, digits: int = DEFAULT_SCORE_DIGITS) -> str:
    """
    Locale-independent score text with ``digits`` significant digits.
    Values are first rounded to ``digits`` decimals so accumulated noise
    around zero prints as 0.
    """
    return format(round(float(value), digits) + 0.0, f".{digits}g")


def tsv(values: Iterable) -> str:
    """
    Join values into one tab-separated row
    """
    return "\t".join(str(value) for value in values)


class ReportRenderer:
    """
    Loads the packaged report templates and renders them with Jinja2.
    """

    def __init__(
        self, template_dir: str = TEMPLATE_DIR, digits: int = DEFAULT_SCORE_DIGITS
    ):
        """
        :param template_dir: Directory holding the ``.jinja`` report templates.
        :param digits: Significant digits used by the ``score`` filter.
        """
        self.template_env = Environment(
            loader=FileSystemLoader(searchpath=template_dir),
            keep_trailing_newline=True,
            trim_blocks=True,
            lstrip_blocks=True,
            undefined=StrictUndefined,
        )
        self.template_env.filters["score"] = lambda value: format_score(value, digits)
        self.template_env.filters["tsv"] = tsv

    def get_template(self, template_name):
        """
        Retrieves a template by name
        """
        return self.template_env.get_template(template_name)

    def _log_info(self, template_name):
        """
        Prints a status update of the rendering operation
        """
        logging.info("\033[94mRendering %s...\033[0m", template_name)

    def render(self, template_name: str, **render_args) -> str:
        """
        Render a report template with the given arguments.
        """
        self._log_info(template_name)
        return self.get_template(template_name).render(**render_args)
