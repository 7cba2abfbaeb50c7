"""Page loading and form submission against a local corpus or an HTTP site.

A loaded :class:`Page` is immutable after construction and may be shared
freely across sessions; loading is reentrant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional
from urllib.parse import urlencode, urljoin, urlsplit

import requests

from . import dom
from .annotations import AnnotatedElement, annotation_attr, ATTR_DESCRIPTION, extract_annotations
from .errors import FetchError, OutOfScope, PageNotFound, UnknownField
from .locator import PageLocator

DEFAULT_TIMEOUT = 10.0
DEFAULT_USER_AGENT = "convbrowse/0.1"

_NON_SUBMITTED_INPUT_TYPES = frozenset({"submit", "button", "reset", "image", "file"})


@dataclass
class FetchConfig:
    """Transport settings; ``http`` doubles as the per-session cookie store."""

    timeout: float = DEFAULT_TIMEOUT
    user_agent: str = DEFAULT_USER_AGENT
    http: Optional[requests.Session] = None

    def http_session(self) -> requests.Session:
        if self.http is None:
            self.http = requests.Session()
        return self.http


@dataclass
class Page:
    """A parsed page: body tree plus its extracted annotation forest."""

    locator: PageLocator
    title: str
    root: dom.DomNode
    annotations: list[AnnotatedElement] = field(default_factory=list)
    page_description: Optional[str] = None


def load_page(locator: PageLocator, fetch_config: Optional[FetchConfig] = None) -> Page:
    """Load and parse the page at ``locator``; no scripts are executed."""
    config = fetch_config or FetchConfig()
    if locator.is_http:
        markup = _fetch_http(locator, config)
    else:
        markup = _read_corpus_file(locator)
    return _build_page(locator, markup)


def _build_page(locator: PageLocator, markup: str) -> Page:
    document = dom.parse_html(markup)
    body = dom.document_body(document)
    annotations = extract_annotations(body, base=locator.base, page_path=locator.path)
    description = annotation_attr(body, ATTR_DESCRIPTION)
    if description is not None:
        description = " ".join(description.split()) or None
    return Page(
        locator=locator,
        title=dom.document_title(document),
        root=body,
        annotations=annotations,
        page_description=description,
    )


def _read_corpus_file(locator: PageLocator) -> str:
    root_dir = Path(locator.base).resolve()
    target = (root_dir / locator.path).resolve()
    if not target.is_relative_to(root_dir):
        raise OutOfScope(locator.path)
    if not target.is_file():
        raise PageNotFound(locator.path)
    try:
        return target.read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        raise FetchError(locator.path, exc) from exc


def _http_origin(base: str) -> str:
    parts = urlsplit(base)
    return f"{parts.scheme}://{parts.netloc}"


def _resolve_http_url(locator: PageLocator) -> str:
    origin = _http_origin(locator.base)
    resolved = urljoin(locator.base.rstrip("/") + "/", locator.path)
    if _http_origin(resolved) != origin:
        raise OutOfScope(locator.path)
    return resolved


def _fetch_http(locator: PageLocator, config: FetchConfig) -> str:
    url = _resolve_http_url(locator)
    try:
        response = config.http_session().get(
            url,
            timeout=config.timeout,
            headers={"User-Agent": config.user_agent},
        )
    except requests.RequestException as exc:
        raise FetchError(locator.path, exc) from exc
    if response.status_code == 404:
        raise PageNotFound(locator.path, "HTTP 404")
    if response.status_code >= 400:
        raise FetchError(locator.path, f"HTTP {response.status_code}")
    if _http_origin(response.url) != _http_origin(locator.base):
        raise OutOfScope(response.url)
    return response.text


def form_field_names(form_element: dom.DomNode) -> list[str]:
    """Names of the form's submittable controls, in document order."""
    names = []
    for control in form_element.iter_elements():
        if control.tag not in ("input", "select", "textarea"):
            continue
        name = control.attr("name")
        if not name:
            continue
        if control.tag == "input":
            input_type = (control.attr("type") or "text").lower()
            if input_type in _NON_SUBMITTED_INPUT_TYPES:
                continue
        names.append(name)
    return names


def _form_values(form_element: dom.DomNode, overrides: dict[str, str]) -> dict[str, str]:
    values: dict[str, str] = {}
    for control in form_element.iter_elements():
        name = control.attr("name")
        if not name:
            continue
        if control.tag == "input":
            input_type = (control.attr("type") or "text").lower()
            if input_type in _NON_SUBMITTED_INPUT_TYPES:
                continue
            if input_type in ("checkbox", "radio") and "checked" not in control.attributes:
                continue
            values[name] = control.attr("value") or ""
        elif control.tag == "select":
            options = control.find_all("option")
            selected = next((o for o in options if "selected" in o.attributes), None)
            chosen = selected if selected is not None else (options[0] if options else None)
            if chosen is not None:
                values[name] = chosen.attr("value") or chosen.text
        elif control.tag == "textarea":
            values[name] = control.text
    values.update(overrides)
    return values


def submit_form(
    page: Page,
    form_element: dom.DomNode,
    field_values: dict[str, str],
    fetch_config: Optional[FetchConfig] = None,
) -> Page:
    """Perform the form's declared submission and return the resulting page.

    For HTTP bases the declared method and encoding are used; for corpus
    bases the action resolves to a corpus path and the encoded values are
    recorded in the returned page's locator.
    """
    config = fetch_config or FetchConfig()
    known = form_field_names(form_element)
    for key in field_values:
        if key not in known:
            raise UnknownField(key, known)
    values = _form_values(form_element, field_values)
    method = (form_element.attr("method") or "get").lower()
    action = (form_element.attr("action") or "").strip() or page.locator.path

    if page.locator.is_http:
        return _submit_http(page, action, method, values, config)

    target = page.locator.sibling(action)
    landed = load_page(PageLocator(target.base, target.path), config)
    recorded = PageLocator(target.base, target.path, query=urlencode(values))
    return Page(
        locator=recorded,
        title=landed.title,
        root=landed.root,
        annotations=landed.annotations,
        page_description=landed.page_description,
    )


def _submit_http(
    page: Page,
    action: str,
    method: str,
    values: dict[str, str],
    config: FetchConfig,
) -> Page:
    target = page.locator.sibling(action)
    url = _resolve_http_url(target)
    headers = {"User-Agent": config.user_agent}
    try:
        if method == "post":
            response = config.http_session().post(
                url, data=values, timeout=config.timeout, headers=headers
            )
        else:
            response = config.http_session().get(
                url, params=values, timeout=config.timeout, headers=headers
            )
    except requests.RequestException as exc:
        raise FetchError(target.path, exc) from exc
    if response.status_code == 404:
        raise PageNotFound(target.path, "HTTP 404")
    if response.status_code >= 400:
        raise FetchError(target.path, f"HTTP {response.status_code}")
    parts = urlsplit(response.url)
    if _http_origin(response.url) != _http_origin(page.locator.base):
        raise OutOfScope(response.url)
    landed_locator = PageLocator(
        page.locator.base, parts.path.lstrip("/"), query=parts.query
    )
    return _build_page(landed_locator, response.text)
