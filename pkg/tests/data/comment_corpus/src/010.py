import re
pat = r'\d+ # digits'  # regex
