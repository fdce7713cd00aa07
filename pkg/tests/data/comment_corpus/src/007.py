doc = """
# not removed
still text
"""
x = 0  # after
