import pytest

from convbrowse.errors import FetchError, OutOfScope, PageNotFound, UnknownField
from convbrowse.locator import PageLocator
from convbrowse.pages import FetchConfig, form_field_names, load_page, submit_form


def test_load_home(home_page):
    assert home_page.title == "Home"
    assert len(home_page.annotations) == 4
    assert home_page.page_description == "Welcome to the ConvBrowse research project site."


def test_missing_page(corpus_dir):
    with pytest.raises(PageNotFound):
        load_page(PageLocator(str(corpus_dir), "missing.html"))


def test_path_escape_rejected(corpus_dir):
    with pytest.raises(OutOfScope):
        load_page(PageLocator(str(corpus_dir), "../../etc/passwd"))


def test_loading_is_idempotent(home_locator):
    first = load_page(home_locator)
    second = load_page(home_locator)
    assert first.title == second.title
    assert first.root == second.root  # structural equality, recursive


def test_form_field_names(corpus_page):
    page = corpus_page("login.html")
    form = page.root.find_first("form")
    assert form_field_names(form) == ["user", "pass"]


def test_submit_form_corpus(corpus_page):
    page = corpus_page("login.html")
    form = page.root.find_first("form")
    landed = submit_form(page, form, {"user": "alice", "pass": "x"})
    assert landed.locator.path == "welcome.html"
    assert landed.title == "Welcome"
    assert "user=alice" in landed.locator.query
    assert "pass=x" in landed.locator.query


def test_submit_form_unknown_field(corpus_page):
    page = corpus_page("login.html")
    form = page.root.find_first("form")
    with pytest.raises(UnknownField):
        submit_form(page, form, {"nonexistent": "1"})


def test_http_load(corpus_http_server):
    page = load_page(PageLocator(corpus_http_server, "home.html"))
    assert page.title == "Home"
    assert len(page.annotations) == 4


def test_http_404(corpus_http_server):
    with pytest.raises(PageNotFound):
        load_page(PageLocator(corpus_http_server, "missing.html"))


def test_http_cross_origin_rejected(corpus_http_server):
    with pytest.raises(OutOfScope):
        load_page(PageLocator(corpus_http_server, "http://other.example/evil.html"))


def test_http_server_down():
    with pytest.raises(FetchError):
        load_page(
            PageLocator("http://127.0.0.1:9", "home.html"),
            FetchConfig(timeout=0.5),
        )


def test_http_form_submit(corpus_http_server):
    page = load_page(PageLocator(corpus_http_server, "login.html"))
    form = page.root.find_first("form")
    landed = submit_form(page, form, {"user": "alice", "pass": "x"})
    assert landed.title == "Welcome"
    assert landed.locator.path == "welcome.html"
    assert "user=alice" in landed.locator.query


def test_concurrent_loads_of_distinct_pages(corpus_dir):
    import threading

    paths = ["home.html", "about.html", "publications.html", "login.html", "welcome.html"] * 4
    results = [None] * len(paths)
    errors = []

    def load(index, path):
        try:
            results[index] = load_page(PageLocator(str(corpus_dir), path))
        except Exception as exc:  # pragma: no cover - failure path
            errors.append(exc)

    threads = [
        threading.Thread(target=load, args=(i, path)) for i, path in enumerate(paths)
    ]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    assert not errors
    for path, page in zip(paths, results):
        assert page is not None
        assert page.locator.path == path
