"""convbrowse: generate a chatbot from an annotated website and browse it by chat."""

from pathlib import Path

from .dialog import (
    BotReply,
    PolicyConfig,
    Session,
    builtin_match,
    export_transcript,
    handle_utterance,
    navigate,
    open_session,
    orient,
)
from .locator import PageLocator
from .pages import FetchConfig, Page, load_page, submit_form

__version__ = "0.1.0"


def demo_corpus_path() -> Path:
    """Directory of the bundled demonstration site."""
    return Path(__file__).parent / "democorpus"


__all__ = [
    "BotReply",
    "FetchConfig",
    "Page",
    "PageLocator",
    "PolicyConfig",
    "Session",
    "builtin_match",
    "demo_corpus_path",
    "export_transcript",
    "handle_utterance",
    "load_page",
    "navigate",
    "open_session",
    "orient",
    "submit_form",
    "__version__",
]
