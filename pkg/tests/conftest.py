import threading
from functools import partial
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

from convbrowse import demo_corpus_path
from convbrowse.context_tree import build_context_tree
from convbrowse.locator import PageLocator
from convbrowse.nlu import generate_training_data, train
from convbrowse.pages import load_page

CORPUS_PAGES = ["home.html", "about.html", "publications.html", "login.html", "welcome.html"]


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return demo_corpus_path()


@pytest.fixture
def home_locator(corpus_dir) -> PageLocator:
    return PageLocator(str(corpus_dir), "home.html")


@pytest.fixture
def home_page(home_locator):
    return load_page(home_locator)


@pytest.fixture
def home_tree(home_page):
    return build_context_tree(home_page)


@pytest.fixture
def home_model(home_tree):
    return train(generate_training_data(home_tree))


@pytest.fixture
def corpus_page(corpus_dir):
    def loader(path: str):
        return load_page(PageLocator(str(corpus_dir), path))

    return loader


@pytest.fixture(scope="module")
def corpus_http_server(request):
    """Serve the demo corpus over HTTP on an ephemeral port."""
    handler = partial(SimpleHTTPRequestHandler, directory=str(demo_corpus_path()))
    server = ThreadingHTTPServer(("127.0.0.1", 0), handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()
    thread.join(timeout=5)
