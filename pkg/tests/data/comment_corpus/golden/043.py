with open('notes.txt') as fh:
    body = fh.read()
