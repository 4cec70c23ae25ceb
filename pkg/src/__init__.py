# segprecision
