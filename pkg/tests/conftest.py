import os

import pytest

from operadic_incidence.operads import (FreeMonoidOperad, IdentityOperad,
                                        MonoidOperad, NaturalsOperad,
                                        TerminalOperad, make_operad)

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')


def data_file(name: str) -> str:
    return os.path.join(DATA_DIR, name)


@pytest.fixture
def identity():
    return IdentityOperad()


@pytest.fixture
def terminal():
    return TerminalOperad()


@pytest.fixture
def freemonoid():
    return FreeMonoidOperad()


@pytest.fixture
def nat():
    return NaturalsOperad()


@pytest.fixture
def z2():
    return MonoidOperad.cyclic(2)


@pytest.fixture
def diamond():
    return make_operad('poset:' + data_file('diamond.json'))


@pytest.fixture
def data_path():
    return data_file


def resolve_descriptor(descriptor: str):
    """Operad descriptors whose last part names a file in the data directory."""
    kind, _, name = descriptor.rpartition(':')
    if name.endswith('.json'):
        return make_operad('{0}:{1}'.format(kind, data_file(name)))
    return make_operad(descriptor)


@pytest.fixture
def resolve():
    return resolve_descriptor
