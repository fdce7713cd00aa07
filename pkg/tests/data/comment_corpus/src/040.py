def dec(fn):
    return fn

@dec  # simple
def h():
    pass
