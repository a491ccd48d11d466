#!/usr/bin/env python3
"""
Ququart Toolkit - Console Output

Level-tagged diagnostics and PASS/FAIL report lines.  Diagnostics go to
stderr so that stdout carries nothing but data.

Licensed under GPL v3
"""

import sys
from datetime import datetime
from typing import Callable, TextIO


class Colors:
    """ANSI color codes for terminal output."""
    RESET = '\033[0m'
    BOLD = '\033[1m'
    RED = '\033[91m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    CYAN = '\033[96m'
    GREY = '\033[90m'

    @staticmethod
    def enabled(stream: TextIO = sys.stderr) -> bool:
        """Check if the stream is a terminal that supports colors."""
        return hasattr(stream, 'isatty') and stream.isatty()


LEVEL_TAGS = {
    'info': ('[INFO]', Colors.CYAN),
    'success': ('[ OK ]', Colors.GREEN),
    'warning': ('[WARN]', Colors.YELLOW),
    'error': ('[FAIL]', Colors.RED),
}


def _c(text: str, color: str, stream: TextIO) -> str:
    """Apply color if the stream supports it."""
    if Colors.enabled(stream):
        return f"{color}{text}{Colors.RESET}"
    return text


def make_logger(quiet: bool = False, stream: TextIO = None) -> Callable[[str, str], None]:
    """Build an ``on_log`` callback that writes timestamped, tagged lines."""
    def log(message: str, level: str = 'info'):
        if quiet and level == 'info':
            return
        out = stream if stream is not None else sys.stderr
        tag, color = LEVEL_TAGS.get(level, LEVEL_TAGS['info'])
        timestamp = datetime.now().strftime('[%H:%M:%S]')
        print(f"{_c(timestamp, Colors.GREY, out)} {_c(tag, color, out)} {message}", file=out)
    return log


def print_header(title: str, stream: TextIO = None):
    out = stream if stream is not None else sys.stderr
    width = 60
    print(file=out)
    print(_c("=" * width, Colors.CYAN, out), file=out)
    print(_c(f"  {title}", Colors.BOLD, out), file=out)
    print(_c("=" * width, Colors.CYAN, out), file=out)


def print_pass(msg: str, stream: TextIO = None):
    out = stream if stream is not None else sys.stderr
    print(f"  {_c('[PASS]', Colors.GREEN, out)} {msg}", file=out)


def print_fail(msg: str, stream: TextIO = None):
    out = stream if stream is not None else sys.stderr
    print(f"  {_c('[FAIL]', Colors.RED, out)} {msg}", file=out)
