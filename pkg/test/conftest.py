import os
import pyfgs as fgs
import pytest as pt


@pt.fixture(scope='session')
def table5():
    return fgs.build(5)


@pt.fixture(scope='session')
def table7():
    return fgs.build(7)


# the following tables are only requested by slow tests

@pt.fixture(scope='session')
def table8():
    return fgs.build(8, processes=os.cpu_count())


@pt.fixture(scope='session')
def table10():
    return fgs.build(10, processes=os.cpu_count())
