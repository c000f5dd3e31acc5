import pytest

from stylodiff.corpus import Corpus, Review
from stylodiff.lexicons import default_bundle
from stylodiff.pipeline import process_corpus


@pytest.fixture(scope="session")
def bundle():
    return default_bundle()


@pytest.fixture
def tiny_corpus():
    return Corpus([
        Review(id="a1", text="The food was good because the place was clean. "
                             "Great service!", group="D1"),
        Review(id="a2", text="Worst biryani in town. I will not return.",
               group="D1"),
        Review(id="b1", text="Had a wonderful brunch although the patio was "
                             "crowded. We ordered the burger and it was "
                             "delicious.", group="D2"),
        Review(id="b2", text="Slow service but the coffee was great.",
               group="D2"),
    ])


@pytest.fixture
def tiny_processed(tiny_corpus, bundle):
    return process_corpus(tiny_corpus, lexicons=bundle)
