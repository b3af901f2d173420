# Mathematical core of the laboratory
