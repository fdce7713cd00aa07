s = 'line1\nline2'  # two lines in one
