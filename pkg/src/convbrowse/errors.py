"""Exception types raised across the engine."""


class ConvBrowseError(Exception):
    """Base class for every engine error."""


class PageNotFound(ConvBrowseError):
    """The requested page does not exist (missing file or HTTP 404)."""

    def __init__(self, path: str, detail: str = ""):
        self.path = path
        message = f"page not found: {path}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class FetchError(ConvBrowseError):
    """A page could not be retrieved; carries the underlying cause."""

    def __init__(self, path: str, cause: BaseException | str):
        self.path = path
        self.cause = cause
        super().__init__(f"could not fetch {path}: {cause}")


class OutOfScope(ConvBrowseError):
    """A locator resolves outside the configured site root."""

    def __init__(self, path: str):
        self.path = path
        super().__init__(f"locator escapes the site root: {path}")


class DuplicateIntentId(ConvBrowseError):
    """Two elements on one page declare the same intent identifier."""

    def __init__(self, intent_id: str, location: str):
        self.intent_id = intent_id
        self.location = location
        super().__init__(f"duplicate intent id {intent_id!r} at {location}")


class MalformedAnnotation(ConvBrowseError):
    """An annotation attribute carries an unusable value."""

    def __init__(self, reason: str, location: str):
        self.reason = reason
        self.location = location
        super().__init__(f"{reason} at {location}")


class UnknownField(ConvBrowseError):
    """A form submission names a field the form does not have."""

    def __init__(self, field: str, known: list[str]):
        self.field = field
        self.known = known
        super().__init__(f"unknown form field {field!r}; form has: {', '.join(known) or 'none'}")


class EmptyDataset(ConvBrowseError):
    """A model cannot be trained from an empty training dataset."""
