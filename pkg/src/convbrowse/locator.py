"""Page locators: where a page lives relative to a site root."""

from __future__ import annotations

import posixpath
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class PageLocator:
    """A page address: site root, page path, optional target intent, query.

    ``base`` is either a directory holding the site's files or an HTTP(S)
    origin. ``fragment`` names the intent a contextual link points at.
    ``query`` records submitted form values for traceability.
    """

    base: str
    path: str
    fragment: Optional[str] = None
    query: str = ""

    @property
    def is_http(self) -> bool:
        return self.base.startswith(("http://", "https://"))

    def sibling(self, target_path: str, fragment: Optional[str] = None) -> "PageLocator":
        """Resolve ``target_path`` relative to this page, keeping the base."""
        directory = posixpath.dirname(self.path)
        joined = posixpath.normpath(posixpath.join(directory, target_path)) if target_path else self.path
        return PageLocator(self.base, joined, fragment=fragment)


def parse_link_target(value: str) -> tuple[str, Optional[str]]:
    """Split a link annotation value into (path, fragment).

    The fragment part, when present, names the target intent. An empty path
    means "this same page".
    """
    path, _, fragment = value.partition("#")
    return path.strip(), (fragment.strip() or None) if fragment else None
