import abc


class D(abc.ABC):
    pass
